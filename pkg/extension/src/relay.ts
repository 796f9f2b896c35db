/**
 * Delivery to the collection service, gated on login state.
 *
 * Envelopes are serialized through a FIFO promise chain (one in-flight
 * request at a time) so the server sees them in capture order. Nothing
 * is sent while logged out. Network failures are retried with backoff;
 * a 401 flips the state to logged-out and stops capture.
 */

import { collectPath, Envelope } from "./wire";

export interface CaptureState {
  loggedIn: boolean;
  username: string;
  eventsSent: number;
  lastError?: string;
}

export interface ResponseLike {
  status: number;
  text(): Promise<string>;
}

export type FetchLike = (
  url: string,
  init?: { credentials?: "include" }
) => Promise<ResponseLike>;

export interface RelayOptions {
  retries?: number; // additional attempts after the first
  backoffMs?: number;
  sleep?: (ms: number) => Promise<void>;
  onState?: (state: CaptureState) => void;
}

export type SendResult = "sent" | "dropped" | "failed";

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export class Relay {
  state: CaptureState = { loggedIn: false, username: "", eventsSent: 0 };

  private queue: Promise<unknown> = Promise.resolve();
  private retries: number;
  private backoffMs: number;
  private sleep: (ms: number) => Promise<void>;
  private onState?: (state: CaptureState) => void;

  constructor(
    public serverUrl: string,
    private fetchFn: FetchLike,
    options: RelayOptions = {}
  ) {
    this.retries = options.retries ?? 3;
    this.backoffMs = options.backoffMs ?? 250;
    this.sleep = options.sleep ?? defaultSleep;
    this.onState = options.onState;
  }

  private notify(): void {
    this.onState?.({ ...this.state });
  }

  /** Queue an envelope; resolves once it is delivered (or dropped). */
  send(envelope: Envelope): Promise<SendResult> {
    const result = this.queue.then(() => this.deliver(envelope));
    this.queue = result.catch(() => undefined);
    return result;
  }

  private async deliver(envelope: Envelope): Promise<SendResult> {
    if (!this.state.loggedIn) {
      return "dropped";
    }
    for (let attempt = 0; attempt <= this.retries; attempt++) {
      if (attempt > 0) {
        await this.sleep(this.backoffMs * 2 ** (attempt - 1));
      }
      let response: ResponseLike;
      try {
        response = await this.fetchFn(this.serverUrl + collectPath(envelope), {
          credentials: "include",
        });
      } catch {
        continue; // network failure: retry with backoff
      }
      if (response.status === 200) {
        this.state.eventsSent += 1;
        this.notify();
        return "sent";
      }
      if (response.status === 401) {
        this.state.loggedIn = false;
        this.state.lastError = "session expired (401); log in again";
        this.notify();
        return "failed";
      }
      this.state.lastError = `collect rejected: ${await response.text()}`;
      this.notify();
      return "failed";
    }
    this.state.lastError = `network failure after ${this.retries + 1} attempts`;
    this.notify();
    return "failed";
  }

  private async authGet(path: string): Promise<{ ok: boolean; message: string }> {
    try {
      const response = await this.fetchFn(this.serverUrl + path, { credentials: "include" });
      const body = await response.text();
      return { ok: response.status === 200, message: body };
    } catch (err) {
      return { ok: false, message: `cannot reach server: ${String(err)}` };
    }
  }

  async register(username: string, password: string): Promise<{ ok: boolean; message: string }> {
    const q = `uname=${encodeURIComponent(username)}&pwd=${encodeURIComponent(password)}`;
    return this.authGet(`/register?${q}`);
  }

  async login(username: string, password: string): Promise<{ ok: boolean; message: string }> {
    const q = `uname=${encodeURIComponent(username)}&pwd=${encodeURIComponent(password)}`;
    const result = await this.authGet(`/login?${q}`);
    if (result.ok) {
      this.state = { loggedIn: true, username, eventsSent: 0 };
      this.notify();
    } else {
      this.state.lastError = result.message;
      this.notify();
    }
    return result;
  }

  async logout(): Promise<void> {
    await this.authGet("/logout");
    // Logged out locally no matter what the server said.
    this.state = { ...this.state, loggedIn: false, username: "" };
    this.notify();
  }
}
