/** Thin fetch client for the authoring service. */

import type { AuthorResponse } from "./types.js";

export class BackendError extends Error {}

async function postJson(url: string, payload: unknown): Promise<unknown> {
  let response: Response;
  try {
    response = await fetch(url, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  } catch (cause) {
    throw new BackendError(`backend unreachable at ${url}`);
  }
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : response.statusText;
    throw new BackendError(detail);
  }
  return body;
}

export async function submitSentence(
  baseUrl: string,
  sentence: string,
): Promise<AuthorResponse> {
  return (await postJson(`${baseUrl}/author`, { sentence })) as AuthorResponse;
}

export async function fetchSession(baseUrl: string): Promise<string[]> {
  const response = await fetch(`${baseUrl}/session`);
  if (!response.ok) {
    throw new BackendError(`session request failed: ${response.status}`);
  }
  const body = (await response.json()) as { facts: string[] };
  return body.facts;
}

export async function fetchFrames(baseUrl: string): Promise<string[]> {
  const response = await fetch(`${baseUrl}/frames`);
  if (!response.ok) {
    throw new BackendError(`frames request failed: ${response.status}`);
  }
  const body = (await response.json()) as { lvps: string[] };
  return body.lvps;
}
