import json

from analysis.Classifier import degree, is_irreducible, norm_sq, superclass_size
from combinatorics.LabeledPoset import highest_cover_set, index_to_poset
from combinatorics.Poset import covers
from combinatorics.SetPartition import format_arcs
from views.diagrams import hasse_dot, labeled_poset_dot


def entry_list(X):
    return [[i, j, v] for (i, j), v in sorted(X.entries().items())]


def entry_text(X):
    '''
    Compact entries, e.g. "1,3:2 2,6:1", "-" when zero
    '''
    entries = sorted(X.entries().items())
    return " ".join(f"{i},{j}:{v}" for (i, j), v in entries) if entries else "-"


def poset_record(P, dyck_index, boundary):
    return {"dyck_index": dyck_index, **P.to_json(), "boundary": list(boundary)}


def superclass_record(number, idx):
    return {
        "index": number,
        "lam": format_arcs(idx.lam),
        "X": entry_list(idx.X),
        "representative": entry_list(idx.representative.off_diag),
        "size": superclass_size(idx),
    }


def supercharacter_record(number, idx):
    labeled = index_to_poset(idx)
    return {
        "index": number,
        "lam": format_arcs(idx.lam),
        "eta": entry_list(idx.eta),
        "functional": entry_list(idx.functional),
        "degree": degree(idx),
        "norm_sq": norm_sq(idx),
        "irreducible": is_irreducible(idx),
        "representative_poset": labeled.to_json()["covers"],
    }


def supercharacter_dot(number, idx):
    labeled = index_to_poset(idx)
    return labeled_poset_dot(labeled, highest_cover_set(labeled.Q).covers, name=f"chi{number}")


def normal_poset_dot(dyck, P):
    return hasse_dot(P, covers(P).covers, highest_cover_set(P).covers, name=f"D{dyck}")


SUPERCLASS_COLUMNS = ["index", "lam", "X", "representative", "size"]
SUPERCHARACTER_COLUMNS = ["index", "lam", "eta", "functional", "degree", "norm_sq", "irreducible", "representative_poset"]


def _tsv_cell(value):
    if isinstance(value, list):
        if not value:
            return "-"
        if isinstance(value[0], list):
            return " ".join(f"{i},{j}:{v}" for i, j, v in value)
        return ",".join(str(v) for v in value)
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def write_jsonl(records, stream):
    for record in records:
        stream.write(json.dumps(record) + "\n")


def write_tsv(columns, records, stream):
    stream.write("\t".join(columns) + "\n")
    for record in records:
        stream.write("\t".join(_tsv_cell(record[c]) for c in columns) + "\n")


def write_json(data, stream):
    json.dump(data, stream, indent=2)
    stream.write("\n")
