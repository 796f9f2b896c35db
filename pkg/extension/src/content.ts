/**
 * Content script: captures the page's keyboard/mouse events and forwards
 * each one to the background script via message passing (content scripts
 * cannot talk to the server directly). Capture is gated on login state,
 * mirrored from extension storage; while logged out nothing leaves the
 * page context at all.
 */

import { KeyboardCapture } from "./keyboard";
import { MouseCapture } from "./mouse";
import { Envelope } from "./wire";

let capturing = false;

function forward(envelope: Envelope): void {
  if (!capturing) {
    return;
  }
  chrome.runtime.sendMessage({ type: envelope.kind, data: envelope.payload }, () => {
    // Touch lastError so a closed service worker does not log noise.
    void chrome.runtime.lastError;
  });
}

const keyboard = new KeyboardCapture(forward);
const mouse = new MouseCapture(forward);

chrome.storage.local.get(["loggedIn"], (items) => {
  capturing = Boolean(items.loggedIn);
});
chrome.storage.onChanged.addListener((changes, area) => {
  if (area === "local" && "loggedIn" in changes) {
    capturing = Boolean(changes.loggedIn.newValue);
  }
});

// The six listeners, in the capture phase so no page handler can swallow them.
window.addEventListener("keydown", (e) => keyboard.handleKeydown(e), true);
window.addEventListener("keyup", (e) => keyboard.handleKeyup(e), true);
window.addEventListener("mousemove", (e) => mouse.handleMove(e), true);
window.addEventListener("mousedown", (e) => mouse.handleMouseDown(e), true);
window.addEventListener("mouseup", (e) => mouse.handleMouseUp(e), true);
window.addEventListener("wheel", (e) => mouse.handleWheel(e), true);
