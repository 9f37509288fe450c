/** Browser entry point: base URL + participant id, then run the session. */

import { ApiClient } from "./api";
import { SessionFlow } from "./session";

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  return fromQuery ?? (window as unknown as { GAITDOM_SERVICE?: string }).GAITDOM_SERVICE
    ?? "http://127.0.0.1:8000";
}

function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  const intro = document.createElement("div");
  intro.className = "intro";
  const label = document.createElement("label");
  label.textContent = "Participant id: ";
  const input = document.createElement("input");
  input.type = "text";
  input.placeholder = "e.g. your worker id";
  label.appendChild(input);
  intro.appendChild(label);
  const button = document.createElement("button");
  button.textContent = "Start rating session";
  intro.appendChild(button);
  root.appendChild(intro);

  button.addEventListener("click", async () => {
    const participantId = input.value.trim();
    if (!participantId) {
      input.focus();
      return;
    }
    root.removeChild(intro);
    const flow = new SessionFlow(root, new ApiClient(baseUrl()));
    try {
      await flow.start(participantId);
    } catch (error) {
      const banner = document.createElement("div");
      banner.className = "error-banner";
      banner.textContent = `could not start session: ${error}`;
      root.appendChild(banner);
    }
  });
}

boot();
