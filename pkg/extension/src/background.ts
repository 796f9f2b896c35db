/**
 * Background service worker: receives captured events from content
 * scripts and auth commands from the popup, and performs all network
 * I/O. Login state and counters are mirrored to extension storage so
 * the popup and content scripts can follow along.
 */

import { Relay } from "./relay";

const DEFAULT_SERVER = "http://127.0.0.1:8077";

const relay = new Relay(DEFAULT_SERVER, (url, init) => fetch(url, init), {
  onState: (state) => {
    chrome.storage.local.set({
      loggedIn: state.loggedIn,
      username: state.username,
      eventsSent: state.eventsSent,
      lastError: state.lastError ?? "",
    });
  },
});

chrome.storage.local.get(["serverUrl"], (items) => {
  if (items.serverUrl) {
    relay.serverUrl = String(items.serverUrl);
  }
  // A fresh worker starts logged out; sensitive capture never outlives it.
  chrome.storage.local.set({ loggedIn: false, username: "", eventsSent: 0, lastError: "" });
});

chrome.runtime.onMessage.addListener((request, _sender, sendResponse) => {
  if (request && (request.type === "keystroke" || request.type === "mouse")) {
    relay.send({ kind: request.type, payload: request.data });
    sendResponse({ queued: true });
    return;
  }
  switch (request?.cmd) {
    case "register":
      relay.register(request.username, request.password).then(sendResponse);
      return true;
    case "login":
      relay.login(request.username, request.password).then(sendResponse);
      return true;
    case "logout":
      relay.logout().then(() => sendResponse({ ok: true }));
      return true;
    case "set-server":
      relay.serverUrl = String(request.serverUrl);
      chrome.storage.local.set({ serverUrl: relay.serverUrl });
      sendResponse({ ok: true });
      return;
    case "status":
      sendResponse({ ...relay.state, serverUrl: relay.serverUrl });
      return;
  }
});
