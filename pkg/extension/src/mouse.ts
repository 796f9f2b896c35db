/**
 * Mouse capture: every event maps to one of the eight action types.
 *
 * Button mapping: 0 -> left, 2 -> right, 1 (middle/wheel button) ->
 * wheel_down / wheel_up; any wheel scroll -> wheel_roll at the pointer's
 * page position. Other buttons (back/forward) are outside the action
 * enumeration and are dropped with a counter.
 */

import { Envelope, MouseAction } from "./wire";

export interface MouseEventLike {
  pageX: number;
  pageY: number;
  button?: number;
}

const DOWN_ACTIONS: Record<number, MouseAction> = {
  0: "left_down",
  1: "wheel_down",
  2: "right_down",
};

const UP_ACTIONS: Record<number, MouseAction> = {
  0: "left_up",
  1: "wheel_up",
  2: "right_up",
};

export class MouseCapture {
  droppedButtons = 0;

  constructor(
    private emit: (envelope: Envelope) => void,
    private now: () => number = Date.now
  ) {}

  private send(action: MouseAction, event: MouseEventLike): void {
    this.emit({
      kind: "mouse",
      payload: { action, x: event.pageX, y: event.pageY, tMs: this.now() },
    });
  }

  handleMove(event: MouseEventLike): void {
    this.send("move", event);
  }

  handleMouseDown(event: MouseEventLike): void {
    const action = DOWN_ACTIONS[event.button ?? 0];
    if (!action) {
      this.droppedButtons += 1;
      return;
    }
    this.send(action, event);
  }

  handleMouseUp(event: MouseEventLike): void {
    const action = UP_ACTIONS[event.button ?? 0];
    if (!action) {
      this.droppedButtons += 1;
      return;
    }
    this.send(action, event);
  }

  handleWheel(event: MouseEventLike): void {
    this.send("wheel_roll", event);
  }
}
