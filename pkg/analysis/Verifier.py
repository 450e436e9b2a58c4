from fractions import Fraction
import logging

import numpy as np

from algebra.Cyclotomic import multiply_rows
from algebra.UpperMatrix import FqUpperMatrix, Role
from analysis.CharacterTable import CharacterTable
from analysis.Classifier import (
    Classifier, degree, elementary_factorization, is_irreducible, norm_sq, restrict_from_un, superclass_size,
)
from analysis.Oracle import CheckResult, Oracle, TWO_SIDED
from combinatorics.LabeledPoset import count_representative, index_to_poset, poset_to_index
from combinatorics.Poset import enumerate_normal, full_poset, is_normal
from combinatorics.SetPartition import enumerate_partitions, format_arcs, position_sets
from settings import CHARACTER_CHECK_CAP, GROUP_ORDER_CAP, SUBPOSET_SEARCH_CAP


class Verifier:
    """
    Compares every closed formula of the classification against the brute
    force oracle for one poset P. Non-normal posets only get the axiom checks
    and the representative-poset negative control.
    """

    def __init__(self, P, p, cap=GROUP_ORDER_CAP):
        self.logger = logging.getLogger(__name__)
        self.CHARACTER_CHECK_CAP = CHARACTER_CHECK_CAP
        self.SUBPOSET_SEARCH_CAP = SUBPOSET_SEARCH_CAP
        self.P = P
        self.p = p
        self.oracle = Oracle(P, p, cap)

    def run(self):
        evaluate = self.oracle.order <= self.CHARACTER_CHECK_CAP
        results = self.oracle.verify_axioms(evaluate=evaluate)
        if is_normal(self.P):
            classifier = Classifier(self.P, self.p)
            classes, characters = classifier.superclasses(), classifier.supercharacters()
            results += self.check_superclasses(classes)
            results += self.check_supercharacters(characters)
            if evaluate:
                results.append(self.check_degree_column(classes, characters))
                results.append(self.check_factorizations(characters))
            results += self.check_restrictions()
        elif len(self.P) <= self.SUBPOSET_SEARCH_CAP:
            results.append(self.negative_control())
        return results

    def report(self):
        results = self.run()
        passed = all(r.passed for r in results if not r.expected_negative)
        level = logging.INFO if passed else logging.ERROR
        self.logger.log(level, f"Verification of {sorted(self.P.relations)} at p={self.p}: {'passed' if passed else 'FAILED'}")
        return {
            "poset": self.P.to_json(),
            "p": self.p,
            "normal": is_normal(self.P),
            "passed": passed,
            "checks": [r.to_json() for r in results],
        }

    def _bijection(self, name, indices, elements, space):
        table = self.oracle.orbit_table(space, TWO_SIDED)
        seen = {}
        for idx, element in zip(indices, elements):
            orbit = table.orbit_id(element)
            if orbit in seen:
                return CheckResult(name, False, {"first": format_arcs(seen[orbit].lam), "second": format_arcs(idx.lam), "orbit": orbit})
            seen[orbit] = idx
        if len(seen) != len(table):
            return CheckResult(name, False, {"indices": len(seen), "orbits": len(table)})
        return CheckResult(name, True)

    def _first_mismatch(self, name, indices, formula, brute_force):
        for idx in indices:
            expected, actual = formula(idx), brute_force(idx)
            if expected != actual:
                return CheckResult(name, False, {"lam": format_arcs(idx.lam), "formula": expected, "oracle": actual})
        return CheckResult(name, True)

    def check_superclasses(self, indices):
        table = self.oracle.orbit_table(Role.PRIMAL, TWO_SIDED)
        reps = [idx.representative.off_diag for idx in indices]
        return [
            self._bijection("superclass representatives biject with primal orbits", indices, reps, Role.PRIMAL),
            self._first_mismatch("superclass sizes", indices, superclass_size,
                                 lambda idx: table.size_of(idx.representative.off_diag)),
            CheckResult("superclass sizes sum to |U_P|", sum(superclass_size(idx) for idx in indices) == self.oracle.order),
        ]

    def check_supercharacters(self, indices):
        table = self.oracle.orbit_table(Role.DUAL, TWO_SIDED)
        functionals = [idx.functional for idx in indices]
        results = [
            self._bijection("supercharacter representatives biject with dual orbits", indices, functionals, Role.DUAL),
            self._first_mismatch("dual orbit sizes", indices,
                                 lambda idx: self.p ** len(position_sets(self.P, idx.lam).coadj),
                                 lambda idx: table.size_of(idx.functional)),
            self._first_mismatch("degrees", indices, degree,
                                 lambda idx: self.oracle.left_orbit_size(idx.functional)),
            self._first_mismatch("norms", indices, norm_sq,
                                 lambda idx: self.oracle.stabiliser_overlap(idx.functional)),
            self._first_mismatch("irreducibility", indices, is_irreducible,
                                 lambda idx: self.oracle.stabiliser_overlap(idx.functional) == 1),
        ]

        bad = None
        for idx in indices:
            labeled = index_to_poset(idx)
            back = poset_to_index(self.P, labeled)
            if back.lam.matrix != idx.lam.matrix or back.eta != idx.eta:
                bad = {"lam": format_arcs(idx.lam), "poset": labeled.to_json()["covers"]}
                break
        results.append(CheckResult("representative posets invert the index map", bad is None, bad))

        if len(self.P) <= self.SUBPOSET_SEARCH_CAP:
            direct = count_representative(self.P, self.p, self.SUBPOSET_SEARCH_CAP)
            results.append(CheckResult(
                "representative posets count the supercharacters", direct == len(indices),
                None if direct == len(indices) else {"posets": direct, "supercharacters": len(indices)},
            ))
        return results

    def check_degree_column(self, classes, characters):
        try:
            table = CharacterTable(self.P, self.p, oracle=self.oracle, rows=characters, cols=classes)
        except AssertionError as exc:
            return CheckResult("identity column holds the degrees", False, {"error": str(exc)})
        bad = table.degree_mismatch()
        return CheckResult("identity column holds the degrees", bad is None, bad)

    def check_factorizations(self, characters):
        '''
        Each supercharacter against its elementary factors g alpha_i h: the
        factors sum to the functional and their characters multiply to its
        character
        '''
        zero = FqUpperMatrix.zero(self.P, self.p, Role.DUAL)
        for idx in characters:
            try:
                factors = elementary_factorization(idx, self.oracle)
            except AssertionError as exc:
                return CheckResult("elementary factorizations", False, {"lam": format_arcs(idx.lam), "error": str(exc)})
            total = zero
            for factor in factors:
                total = total + factor
            if total != idx.functional:
                return CheckResult("elementary factorizations", False,
                                   {"lam": format_arcs(idx.lam), "sum": total.to_json()})

            product = np.zeros((self.oracle.order, self.p - 1), dtype=object)
            product[:, 0] = 1
            scale = Fraction(1)
            for factor in factors:
                rows, factor_scale = self.oracle.character_row(factor)
                product = multiply_rows(product, rows.astype(object), self.p)
                scale *= factor_scale
            rows, own_scale = self.oracle.character_row(idx.functional)
            residual, _ = self.oracle.weighted_sum([(product, scale), (rows, -own_scale)])
            if np.any(residual != 0):
                return CheckResult("elementary factorizations", False,
                                   {"lam": format_arcs(idx.lam), "factors": len(factors)})
        return CheckResult("elementary factorizations", True)

    def check_restrictions(self):
        '''
        Res from U_n of every supercharacter of U_n is p^c times the sum of
        the U_P supercharacters of its projection, compared at every element
        '''
        full = full_poset(self.P.n)
        ambient_order = self.p ** len(full)
        if ambient_order > self.CHARACTER_CHECK_CAP:
            self.logger.info(f"Skipping restrictions from U_{self.P.n}: order {ambient_order} above {self.CHARACTER_CHECK_CAP}")
            return []
        ambient = self.oracle if self.P == full else Oracle(full, self.p)
        keys = self.oracle.keys_in(ambient)
        for lam in enumerate_partitions(full, self.p, Role.DUAL):
            c, indices = restrict_from_un(self.P, lam)
            ambient_rows, ambient_scale = ambient.character_row(lam.matrix)
            terms = [(ambient_rows[keys], -ambient_scale)]
            for idx in indices:
                rows, scale = self.oracle.character_row(idx.functional)
                terms.append((rows, Fraction(self.p) ** c * scale))
            residual, _ = self.oracle.weighted_sum(terms)
            if np.any(residual != 0):
                return [CheckResult("restrictions from U_n are sums of supercharacters", False,
                                    {"lam": format_arcs(lam), "c": c})]
        return [CheckResult("restrictions from U_n are sums of supercharacters", True)]

    def negative_control(self):
        '''
        For non-normal P the representative posets need not count the dual
        orbits; a mismatch here is the expected outcome
        '''
        direct = count_representative(self.P, self.p, self.SUBPOSET_SEARCH_CAP)
        orbits = len(self.oracle.orbit_table(Role.DUAL, TWO_SIDED))
        self.logger.info(f"Negative control: {direct} representative posets, {orbits} dual orbits")
        return CheckResult(
            "representative posets count the dual orbits", direct == orbits,
            {"posets": direct, "orbits": orbits}, expected_negative=True,
        )


def verify_poset(P, p, cap=GROUP_ORDER_CAP):
    return Verifier(P, p, cap).report()


def verify_all_normal(n, p, cap=GROUP_ORDER_CAP):
    reports = [verify_poset(P, p, cap) for P in enumerate_normal(n)]
    return {"n": n, "p": p, "passed": all(r["passed"] for r in reports), "posets": reports}
