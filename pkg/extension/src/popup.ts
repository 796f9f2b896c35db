/** Popup: register/login/logout and a live view of the capture state. */

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function inputValue(id: string): string {
  return ($(id) as HTMLInputElement).value;
}

function command(message: Record<string, unknown>): Promise<any> {
  return new Promise((resolve) => chrome.runtime.sendMessage(message, resolve));
}

function showMessage(text: string, isError: boolean): void {
  const box = $("message");
  box.textContent = text;
  box.className = isError ? "error" : "info";
}

async function refresh(): Promise<void> {
  const state = await command({ cmd: "status" });
  if (!state) return;
  $("status").textContent = state.loggedIn
    ? `capturing as ${state.username}`
    : "logged out (capture off)";
  $("events-sent").textContent = String(state.eventsSent ?? 0);
  ($("server") as HTMLInputElement).value = state.serverUrl ?? "";
  if (state.lastError) {
    showMessage(state.lastError, true);
  }
}

$("register").addEventListener("click", async () => {
  const result = await command({
    cmd: "register",
    username: inputValue("username"),
    password: inputValue("password"),
  });
  showMessage(result.ok ? "registered; now log in" : result.message, !result.ok);
});

$("login").addEventListener("click", async () => {
  await command({ cmd: "set-server", serverUrl: inputValue("server") });
  const result = await command({
    cmd: "login",
    username: inputValue("username"),
    password: inputValue("password"),
  });
  showMessage(result.ok ? "logged in; capture active" : result.message, !result.ok);
  refresh();
});

$("logout").addEventListener("click", async () => {
  await command({ cmd: "logout" });
  showMessage("logged out; capture stopped", false);
  refresh();
});

chrome.storage.onChanged.addListener(() => {
  refresh();
});

refresh();
