/** Pure string renderers for the authoring view.
 *
 * Every byte of linguistic content comes from the backend response; these
 * functions only lay it out, which keeps them snapshot-testable without a
 * browser.
 */

import type {
  AuthorResponse,
  EnvelopeParse,
  Fact,
  TraceEntry,
  Violation,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const TOKEN_WIDTH = 96;
const ARC_BASE = 26;
const ARC_STEP = 22;
const BASELINE = 190;

function tokenX(index: number): number {
  return 40 + index * TOKEN_WIDTH;
}

/** Arc diagram over the served parse; arcs mirror the head edges exactly. */
export function renderArcDiagram(
  parse: EnvelopeParse,
  highlighted: Set<number> = new Set(),
): string {
  const tokens = parse.tokens;
  const position = new Map<number, number>();
  tokens.forEach((tok, i) => position.set(tok.id, i));
  const width = tokenX(tokens.length) + 20;
  const parts: string[] = [];
  parts.push(
    `<svg class="arc-diagram" viewBox="0 0 ${width} ${BASELINE + 58}" ` +
      `width="${width}" role="img">`,
  );

  const arcs = tokens.filter((tok) => tok.head !== 0);
  const sorted = [...arcs].sort(
    (a, b) =>
      Math.abs(position.get(a.head)! - position.get(a.id)!) -
      Math.abs(position.get(b.head)! - position.get(b.id)!),
  );
  const level = new Map<number, number>();
  sorted.forEach((tok, i) => level.set(tok.id, 1 + i));

  for (const tok of arcs) {
    const from = tokenX(position.get(tok.head)!);
    const to = tokenX(position.get(tok.id)!);
    const height = ARC_BASE + level.get(tok.id)! * ARC_STEP * 0.35;
    const mid = (from + to) / 2;
    const top = BASELINE - 30 - height;
    parts.push(
      `<path class="arc" d="M ${from} ${BASELINE - 28} C ${from} ${top}, ` +
        `${to} ${top}, ${to} ${BASELINE - 28}" data-dep="${tok.id}" ` +
        `data-head="${tok.head}"/>`,
    );
    parts.push(
      `<text class="arc-label" x="${mid}" y="${top + 8}">` +
        `${escapeHtml(tok.deprel)}</text>`,
    );
  }

  const root = tokens.find((tok) => tok.head === 0);
  if (root) {
    const x = tokenX(position.get(root.id)!);
    parts.push(
      `<line class="root-mark" x1="${x}" y1="8" x2="${x}" ` +
        `y2="${BASELINE - 28}" data-dep="${root.id}"/>`,
    );
    parts.push(`<text class="arc-label" x="${x + 4}" y="16">root</text>`);
  }

  for (const tok of tokens) {
    const x = tokenX(position.get(tok.id)!);
    const classes = highlighted.has(tok.id) ? "token highlight" : "token";
    const hover =
      `${tok.upos}/${tok.xpos} ne=${tok.ne} ` +
      `upos ${tok.upos_alternatives[0][1]} xpos ${tok.xpos_alternatives[0][1]}`;
    parts.push(
      `<g class="${classes}" data-token="${tok.id}">` +
        `<title>${escapeHtml(hover)}</title>` +
        `<text class="surface" x="${x}" y="${BASELINE}">` +
        `${escapeHtml(tok.surface)}</text>` +
        `<text class="pos" x="${x}" y="${BASELINE + 20}">` +
        `${escapeHtml(tok.upos.toLowerCase())}</text>` +
        `<text class="index" x="${x}" y="${BASELINE + 38}">${tok.id}</text>` +
        `</g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export function renderViolations(violations: Violation[]): string {
  if (!violations.length) {
    return "";
  }
  const items = violations
    .map(
      (violation) =>
        `<li class="violation" data-token="${violation.token}" ` +
        `data-property="${violation.property}">` +
        `${escapeHtml(violation.message)}</li>`,
    )
    .join("\n");
  return (
    `<section class="violations"><h2>Why this sentence was rejected</h2>` +
    `<ul>\n${items}\n</ul>` +
    `<p class="hint">Please rephrase the sentence and try again.</p></section>`
  );
}

export function renderFacts(facts: Fact[], connective: string): string {
  const rows = facts
    .map((fact) => {
      const roles = fact.roles
        .map(
          (slot) =>
            `<li><span class="role">${escapeHtml(slot.role)}</span> ` +
            `<span class="lemma">${escapeHtml(slot.lemma)}</span> ` +
            `<span class="synset">${escapeHtml(slot.synset ?? "na")}</span> ` +
            `<span class="rid">rid_${slot.rid}</span></li>`,
        )
        .join("");
      return (
        `<li class="fact" data-fid="${fact.fid}">` +
        `<span class="frame">${escapeHtml(fact.frame)}</span>` +
        `<ul class="roles">${roles}</ul></li>`
      );
    })
    .join("\n");
  const marker =
    connective === "or"
      ? `<p class="connective">alternatives (or-coordination)</p>`
      : "";
  return `<section class="facts"><h2>Logical facts</h2>${marker}<ol>\n${rows}\n</ol></section>`;
}

export function renderUlrPanel(response: AuthorResponse): string {
  if (!response.ulr) {
    return "";
  }
  return (
    `<section class="ulr-panel"><h2>Serialized representation</h2>` +
    `<pre>${escapeHtml(response.ulr)}</pre></section>`
  );
}

export function renderTokenFacts(tokenFacts: string): string {
  if (!tokenFacts) {
    return "";
  }
  return (
    `<details class="token-facts"><summary>Token encoding</summary>` +
    `<pre>${escapeHtml(tokenFacts)}</pre></details>`
  );
}

export function renderTrace(trace: TraceEntry[]): string {
  if (!trace.length) {
    return "";
  }
  const entries = trace
    .map((entry) => {
      const removed = entry.edges_removed
        .map(([h, d, l]) => `${h}-${l}->${d}`)
        .join(", ");
      const added = entry.edges_added
        .map(([h, d, l]) => `${h}-${l}->${d}`)
        .join(", ");
      return (
        `<li class="trace-entry" data-rule="${escapeHtml(entry.rule)}">` +
        `<span class="rule">${escapeHtml(entry.rule)}</span>` +
        `<span class="before">${escapeHtml(removed || "-")}</span>` +
        `<span class="after">${escapeHtml(added || "-")}</span></li>`
      );
    })
    .join("\n");
  return (
    `<details class="trace"><summary>Rewrites (before / after)</summary>` +
    `<ol>\n${entries}\n</ol></details>`
  );
}

export function renderSessionLog(facts: string[]): string {
  if (!facts.length) {
    return `<p class="empty">No facts recorded in this session yet.</p>`;
  }
  return `<pre class="session-log">${escapeHtml(facts.join("\n"))}</pre>`;
}

/** The whole result area for one submitted sentence. */
export function renderResult(response: AuthorResponse): string {
  if (response.status === "unknown_sentence") {
    return (
      `<section class="banner warning">` +
      `${escapeHtml(response.message ?? "No parse available.")}</section>`
    );
  }
  const parts: string[] = [];
  const highlighted = new Set(
    (response.violations ?? []).map((violation) => violation.token),
  );
  if (response.parse) {
    parts.push(renderArcDiagram(response.parse, highlighted));
  }
  if (response.status === "ok") {
    parts.push(renderFacts(response.facts ?? [], response.connective ?? "and"));
    parts.push(renderUlrPanel(response));
  } else if (response.status === "rejected") {
    parts.push(renderViolations(response.violations ?? []));
  } else {
    parts.push(
      `<section class="banner error">Cannot author this sentence: ` +
        `${escapeHtml(response.error ?? "unknown error")}</section>`,
    );
  }
  parts.push(renderTokenFacts(response.token_facts ?? ""));
  parts.push(renderTrace(response.trace ?? []));
  return parts.filter(Boolean).join("\n");
}
