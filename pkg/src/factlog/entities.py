"""Compaction of multi-token named entities into single tokens.

Two span sources: runs of flat/compound dependents under a PROPN head, and
pre-annotated bracketed placeholders ``[ ... ]``.  The surviving token is the
span member whose head lies outside the span; its lemma becomes the joined,
lowercased surface text and it inherits the span's entity tag.
"""

from __future__ import annotations

from .model import DependencyParse, StructureError, label_matches


def _flat_spans(parse: DependencyParse) -> list[list[int]]:
    spans = []
    for tid in parse.token_ids():
        if parse.token(tid).upos != "PROPN":
            continue
        if any(label_matches(e.label, "flat") or e.label == "compound"
               for e in parse.in_edges(tid)):
            continue  # not the top of its run
        members = {tid}
        frontier = [tid]
        while frontier:
            nxt = []
            for m in frontier:
                for e in parse.out_edges(m):
                    if (label_matches(e.label, "flat")
                            or e.label == "compound") and e.dep not in members:
                        members.add(e.dep)
                        nxt.append(e.dep)
            frontier = nxt
        if len(members) < 2:
            continue
        ordered = sorted(members)
        if ordered != list(range(ordered[0], ordered[-1] + 1)):
            continue  # only contiguous runs are named-entity spans
        spans.append(ordered)
    return spans


def _bracket_spans(parse: DependencyParse) -> list[list[int]]:
    spans = []
    ids = parse.token_ids()
    open_pos = None
    for tid in ids:
        surface = parse.token(tid).surface
        if surface == "[":
            open_pos = tid
        elif surface == "]" and open_pos is not None:
            if tid - open_pos > 1:
                spans.append(list(range(open_pos, tid + 1)))
            open_pos = None
    return spans


def find_entity_spans(parse: DependencyParse) -> list[list[int]]:
    """All compactable spans, outermost bracket spans first."""
    brackets = _bracket_spans(parse)
    covered = {t for span in brackets for t in span}
    flats = [s for s in _flat_spans(parse) if not covered & set(s)]
    return sorted(brackets + flats)


def compact_entities(parse: DependencyParse, trace=None) -> DependencyParse:
    """Merge every entity span into one token; edges re-target it.

    The result is still a tree; a span whose every member is headed inside
    the span would make a cycle and raises StructureError.
    """
    spans = find_entity_spans(parse)
    if not spans:
        return parse
    out = parse.copy()
    for span in spans:
        _merge_span(out, span, trace)
    out.validate_tree()
    return out


def _merge_span(parse: DependencyParse, span: list[int], trace) -> None:
    members = set(span)
    content = [t for t in span if parse.token(t).surface not in ("[", "]")]
    keep = None
    for tid in content:
        incoming = parse.in_edges(tid)
        if not incoming or any(e.head not in members for e in incoming):
            keep = tid
            break
    if keep is None:
        raise StructureError(
            f"sentence {parse.sentence_id}: entity span {span} has no head "
            f"outside the span")

    surface = " ".join(parse.token(t).surface for t in content)
    lemma = " ".join(parse.token(t).surface.lower() for t in content)
    ne_tag = next((parse.token(t).ne_tag for t in content
                   if parse.token(t).ne_tag != "o"), "o")

    edges_added = []
    edges_removed = []
    for e in list(parse.edges):
        if e.head in members and e.dep not in members and e.head != keep:
            parse.remove_edge(e)
            edges_removed.append(e)
            new = parse.add_edge(keep, e.dep, e.label)
            edges_added.append(new)
        elif e.dep in members and e.head not in members and e.dep != keep:
            parse.remove_edge(e)
            edges_removed.append(e)
            new = parse.add_edge(e.head, keep, e.label)
            edges_added.append(new)

    removed = [t for t in span if t != keep]
    for tid in removed:
        parse.remove_token(tid)
    tok = parse.token(keep)
    tok.surface = surface
    tok.lemma = lemma
    tok.ne_tag = ne_tag

    if trace is not None:
        trace.append_entry(
            rule="compact_entities", token_ids=span,
            edges_removed=edges_removed, edges_added=edges_added,
            tokens_removed=removed,
            fields_set={keep: {"surface": surface, "lemma": lemma,
                               "ne_tag": ne_tag}})
