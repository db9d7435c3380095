"""Export of parses to the nine-argument logical token encoding.

Each token becomes one fact::

    token(index(S,T,P),LEMMA,EDGES,HEAD,UPOS,XPOS,index(S,R),NE,VTAG).

where S is the sentence id, T the token id, P the parse rank, EDGES the list
of edges incident to the token (outgoing first in ascending target order,
then the incoming edge with its label string reversed), HEAD the incoming
edge, R the root token of the sentence and VTAG the validation tag.
"""

from __future__ import annotations

from .model import VIRTUAL_ROOT, DependencyParse
from .terms import atom


def reversed_label(label: str) -> str:
    """Edge label as seen from the dependent side: the string reversed."""
    return label[::-1]


def export_token_facts(parse: DependencyParse) -> str:
    """One token/9 fact per line, terminating periods included."""
    sid = parse.sentence_id
    root = parse.root_id()
    lines = []
    for tid in parse.token_ids():
        tok = parse.token(tid)
        head = parse.head_edge(tid)
        assert head is not None  # validate_tree guarantees a head
        edge_terms = [f"edge(index({sid},{e.dep}),{atom(e.label)})"
                      for e in sorted(parse.out_edges(tid),
                                      key=lambda e: e.dep)]
        if head.head != VIRTUAL_ROOT:
            edge_terms.append(
                f"edge(index({sid},{head.head}),{atom(reversed_label(head.label))})")
        head_term = f"edge(index({sid},{head.head}),{atom(head.label)})"
        lines.append(
            "token("
            f"index({sid},{tid},{parse.parse_id}),"
            f"{atom(tok.lemma)},"
            f"[{','.join(edge_terms)}],"
            f"{head_term},"
            f"{atom(tok.upos.lower())},"
            f"{atom(tok.xpos.lower())},"
            f"index({sid},{root}),"
            f"{atom(tok.ne_tag)},"
            f"{tok.validation})."
        )
    return "\n".join(lines) + ("\n" if lines else "")
