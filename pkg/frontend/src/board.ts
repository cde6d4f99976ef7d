/**
 * Inspiration board: the chains grown from the basic word, plus pinned
 * concepts. Renders from SessionState alone so export → import → render
 * reproduces the same board.
 */

import { appendToChain, newChain, serializeSession, unpinConcept, type NetworkInfo, type SessionState } from "./session.js";

export interface BoardHandlers {
  /** Anything changed — callers typically re-render dependent views. */
  onChange: () => void;
  onNotice: (message: string) => void;
}

export function renderBoard(state: SessionState, container: HTMLElement, handlers: BoardHandlers): void {
  container.replaceChildren();

  const heading = document.createElement("h3");
  heading.textContent = `inspiration links for “${state.basicWord}”`;
  container.appendChild(heading);

  const chains = document.createElement("div");
  chains.className = "chains";
  state.chains.forEach((chain, index) => {
    const row = document.createElement("div");
    row.className = "chain";
    row.dataset.chain = String(index);
    const text = document.createElement("span");
    text.className = "chain-text";
    text.textContent = chain.join(" – ");
    row.appendChild(text);

    const input = document.createElement("input");
    input.type = "text";
    input.placeholder = "append concept…";
    row.appendChild(input);
    const add = document.createElement("button");
    add.type = "button";
    add.textContent = "append";
    add.addEventListener("click", () => {
      const update = appendToChain(state, index, input.value);
      if (!update.ok) {
        handlers.onNotice(update.notice);
        return;
      }
      input.value = "";
      handlers.onChange();
    });
    row.appendChild(add);
    chains.appendChild(row);
  });
  container.appendChild(chains);

  const more = document.createElement("button");
  more.type = "button";
  more.id = "new-chain";
  more.textContent = "new chain";
  more.addEventListener("click", () => {
    newChain(state);
    handlers.onChange();
  });
  container.appendChild(more);

  const pinHeading = document.createElement("h3");
  pinHeading.textContent = "pinned";
  container.appendChild(pinHeading);
  const pins = document.createElement("ul");
  pins.className = "pins";
  for (const title of state.pinned) {
    const item = document.createElement("li");
    item.textContent = title + " ";
    const drop = document.createElement("button");
    drop.type = "button";
    drop.textContent = "unpin";
    drop.addEventListener("click", () => {
      unpinConcept(state, title);
      handlers.onChange();
    });
    item.appendChild(drop);
    pins.appendChild(item);
  }
  container.appendChild(pins);
}

/** Trigger a browser download of the session document. */
export function downloadSession(state: SessionState, network: NetworkInfo | null): void {
  const blob = new Blob([serializeSession(state, network)], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = "session.json";
  document.body.appendChild(link);
  link.click();
  link.remove();
  URL.revokeObjectURL(url);
}
