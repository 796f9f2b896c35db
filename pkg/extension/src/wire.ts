/**
 * Wire format shared with the collection service.
 *
 * The data parameter of GET /collect is the canonical JSON of the payload
 * (fixed field order, boolean flags as 0/1) percent-encoded with only
 * RFC 3986 unreserved characters left bare. The server decodes it exactly
 * once, so the encoded string must go into the URL verbatim.
 */

export type MouseAction =
  | "move"
  | "left_down"
  | "left_up"
  | "right_down"
  | "right_up"
  | "wheel_roll"
  | "wheel_down"
  | "wheel_up";

export interface KeystrokeRecord {
  code: string;
  key: string;
  downMs: number;
  upMs: number;
  ctrl: boolean;
  alt: boolean;
  shift: boolean;
  caps: boolean;
}

export interface MouseRecord {
  action: MouseAction;
  x: number;
  y: number;
  tMs: number;
}

export type Envelope =
  | { kind: "keystroke"; payload: KeystrokeRecord }
  | { kind: "mouse"; payload: MouseRecord };

/** encodeURIComponent, tightened to RFC 3986 (also encodes ! ' ( ) *). */
function strictEncode(text: string): string {
  return encodeURIComponent(text).replace(
    /[!'()*]/g,
    (c) => "%" + c.charCodeAt(0).toString(16).toUpperCase()
  );
}

export function payloadJson(envelope: Envelope): string {
  if (envelope.kind === "keystroke") {
    const p = envelope.payload;
    return JSON.stringify({
      code: p.code,
      key: p.key,
      down: p.downMs,
      up: p.upMs,
      ctrl: p.ctrl ? 1 : 0,
      alt: p.alt ? 1 : 0,
      shift: p.shift ? 1 : 0,
      caps: p.caps ? 1 : 0,
    });
  }
  const p = envelope.payload;
  return JSON.stringify({ action: p.action, x: p.x, y: p.y, t: p.tMs });
}

export function encodeEnvelope(envelope: Envelope): string {
  return strictEncode(payloadJson(envelope));
}

export function collectPath(envelope: Envelope): string {
  return `/collect?type=${envelope.kind}&data=${encodeEnvelope(envelope)}`;
}
