/**
 * Keyboard capture: one record per physical press/release cycle.
 *
 * A record is opened on keydown (timestamps and modifier flags taken at
 * that instant, keyed by the physical key code) and completed on the
 * matching keyup. Auto-repeat keydowns for an already-pending code are
 * ignored; keyups without a pending record (e.g. the key was pressed
 * before capture started) are dropped and counted.
 */

import { Envelope, KeystrokeRecord } from "./wire";

export interface KeyEventLike {
  code: string;
  key: string;
  ctrlKey: boolean;
  altKey: boolean;
  shiftKey: boolean;
  repeat?: boolean;
  getModifierState?(mod: string): boolean;
}

export class KeyboardCapture {
  orphanKeyups = 0;
  private pending = new Map<string, KeystrokeRecord>();

  constructor(
    private emit: (envelope: Envelope) => void,
    private now: () => number = Date.now
  ) {}

  handleKeydown(event: KeyEventLike): void {
    if (event.repeat || this.pending.has(event.code)) {
      return;
    }
    this.pending.set(event.code, {
      code: event.code,
      key: event.key,
      downMs: this.now(),
      upMs: 0,
      ctrl: event.ctrlKey,
      alt: event.altKey,
      shift: event.shiftKey,
      caps: event.getModifierState?.("CapsLock") ?? false,
    });
  }

  handleKeyup(event: KeyEventLike): void {
    const record = this.pending.get(event.code);
    if (!record) {
      this.orphanKeyups += 1;
      return;
    }
    this.pending.delete(event.code);
    this.emit({ kind: "keystroke", payload: { ...record, upMs: this.now() } });
  }

  /** Keys currently held down (pending completion). */
  pendingCount(): number {
    return this.pending.size;
  }
}
