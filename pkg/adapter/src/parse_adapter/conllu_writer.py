"""Extended CoNLL-U output for envelopes, matching the MISC keys the
authoring pipeline ingests (UposConf=, XposConf=, Ner=)."""

from __future__ import annotations

import io


def envelope_to_conllu(envelope: dict, sentence_id: int = 1) -> str:
    out = io.StringIO()
    for rank, parse in enumerate(envelope["parses"], start=1):
        sid = str(sentence_id) if rank == 1 else f"{sentence_id}.{rank}"
        out.write(f"# sent_id = {sid}\n")
        out.write(f"# text = {envelope['sentence']}\n")
        if parse.get("confidence", 1.0) != 1.0:
            out.write(f"# confidence = {parse['confidence']:g}\n")
        for tok in parse["tokens"]:
            misc = []
            upos_conf = tok["upos_alternatives"][0][1]
            xpos_conf = tok["xpos_alternatives"][0][1]
            if upos_conf != 1.0:
                misc.append(f"UposConf={upos_conf:g}")
            if xpos_conf != 1.0:
                misc.append(f"XposConf={xpos_conf:g}")
            if tok.get("ne", "o") != "o":
                misc.append(f"Ner={tok['ne']}")
            out.write("\t".join([
                str(tok["id"]), tok["surface"], tok["lemma"], tok["upos"],
                tok["xpos"], "_", str(tok["head"]), tok["deprel"], "_",
                "|".join(misc) if misc else "_",
            ]) + "\n")
        out.write("\n")
    return out.getvalue()
