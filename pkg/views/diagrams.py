from styles.colours import BLUE, FONTSIZE, GRAY, HIGHEST_STYLE, LINEWIDTH, OTHER_STYLE, PURPLE, TEXT_COLOR


def create_digraph(name, body_lines):
    """Wraps DOT statements in a bottom-to-top digraph."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;",
             f'  node [shape=circle, fontsize={FONTSIZE}, fontcolor="{TEXT_COLOR}"];']
    lines += [f"  {line}" for line in body_lines]
    lines.append("}")
    return "\n".join(lines) + "\n"


def create_node(vertex, isolated=False):
    if isolated:
        return f'{vertex} [color="{GRAY}"];'
    return f"{vertex};"


def create_edge(source, target, label=None, highest=True):
    """Solid edges mark the highest cover set, dashed edges the other covers."""
    attrs = [
        f'style={HIGHEST_STYLE if highest else OTHER_STYLE}',
        f'color="{PURPLE if highest else BLUE}"',
        f"penwidth={LINEWIDTH}",
    ]
    if label is not None:
        attrs.append(f'label="{label}"')
    return f"{source} -> {target} [{', '.join(attrs)}];"


def _nodes(n, edges):
    touched = {v for edge in edges for v in edge}
    return [create_node(v, isolated=v not in touched) for v in range(1, n + 1)]


def hasse_dot(P, cover_pairs, highest_pairs=None, name="P"):
    """Hasse diagram of a poset from its covers."""
    highest_pairs = cover_pairs if highest_pairs is None else highest_pairs
    edges = sorted(cover_pairs)
    body = _nodes(P.n, edges)
    body += [create_edge(i, k, highest=(i, k) in highest_pairs) for i, k in edges]
    return create_digraph(name, body)


def labeled_poset_dot(labeled, highest_pairs, name="Q"):
    """Labeled Hasse diagram, labels on the cover edges."""
    labels = dict(labeled.labels)
    edges = sorted(labels)
    body = _nodes(labeled.n, edges)
    body += [create_edge(i, k, labels[(i, k)], (i, k) in highest_pairs) for i, k in edges]
    return create_digraph(name, body)
