/** Browser bootstrap: wires the input box to the backend and swaps rendered
 * panels into the page.  All content originates from backend responses. */

import { BackendError, fetchSession, submitSentence } from "./api.js";
import { renderResult, renderSessionLog } from "./render.js";

const DEFAULT_BACKEND = "http://127.0.0.1:8023";

/** Empty input (or an in-flight request) must not issue a request. */
export function shouldSubmit(sentence: string, busy: boolean): boolean {
  return sentence.trim().length > 0 && !busy;
}

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing #${id}`);
  }
  return found as T;
}

export function setupApp(): void {
  const input = element<HTMLInputElement>("sentence-input");
  const backendBox = element<HTMLInputElement>("backend-url");
  const form = element<HTMLFormElement>("author-form");
  const result = element<HTMLDivElement>("result");
  const session = element<HTMLDivElement>("session");
  backendBox.value = DEFAULT_BACKEND;

  let busy = false;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const sentence = input.value.trim();
    if (!shouldSubmit(sentence, busy)) {
      return;
    }
    busy = true;
    const backend = backendBox.value.replace(/\/$/, "");
    submitSentence(backend, sentence)
      .then(async (response) => {
        result.innerHTML = renderResult(response);
        if (response.status === "ok") {
          input.value = "";
        }
        session.innerHTML = renderSessionLog(await fetchSession(backend));
      })
      .catch((error: unknown) => {
        const message =
          error instanceof BackendError
            ? error.message
            : "unexpected client error";
        // keep the input so the author can retry after the banner
        result.innerHTML = `<section class="banner error">${message}</section>`;
      })
      .finally(() => {
        busy = false;
      });
  });
}

if (typeof document !== "undefined" && document.getElementById("author-form")) {
  setupApp();
}
