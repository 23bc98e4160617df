// Pure control-state logic, kept free of DOM so it unit-tests in node.

import type { ControlState, ControlValue, Schema, SchemaControl } from './types.js';

export function defaultState(schema: Schema): ControlState {
  const values: Record<string, ControlValue> = {};
  for (const control of schema.controls) {
    values[control.name] = control.default;
  }
  return { values, seed: null, inFlight: false };
}

/** Clamp a proposed value into the control's legal domain. */
export function clampValue(control: SchemaControl, proposed: ControlValue): ControlValue {
  if (control.type === 'slider') {
    const numeric = typeof proposed === 'number' ? proposed : Number(proposed);
    if (!Number.isFinite(numeric)) return control.default;
    const [lo, hi] = control.range;
    return Math.min(hi, Math.max(lo, numeric));
  }
  if (control.type === 'toggle') {
    return Boolean(proposed);
  }
  const allowed = control.options.map((o) => o.value);
  return typeof proposed === 'string' && allowed.includes(proposed) ? proposed : control.default;
}

export function setControl(
  state: ControlState,
  schema: Schema,
  name: string,
  proposed: ControlValue,
): ControlState {
  const control = schema.controls.find((c) => c.name === name);
  if (!control) return state;
  return { ...state, values: { ...state.values, [name]: clampValue(control, proposed) } };
}

/** Parse the seed box: empty means "draw one server-side". */
export function parseSeed(text: string): number | null {
  const trimmed = text.trim();
  if (trimmed === '') return null;
  const value = Number(trimmed);
  if (!Number.isSafeInteger(value) || value < 0) return null;
  return value;
}

/** Request body for a render; out-of-range state never leaves the client. */
export function buildRenderRequest(
  state: ControlState,
  schema: Schema,
  seed: number | null,
): Record<string, unknown> {
  const body: Record<string, unknown> = {};
  for (const control of schema.controls) {
    body[control.name] = clampValue(control, state.values[control.name]);
  }
  if (seed !== null) {
    body.seed = seed;
  }
  return body;
}

/**
 * Single in-flight render: returns the started state, or null when a render
 * is already running (the second trigger is ignored).
 */
export function beginRender(state: ControlState): ControlState | null {
  if (state.inFlight) return null;
  return { ...state, inFlight: true };
}

export function finishRender(state: ControlState, seed: number | null): ControlState {
  return { ...state, inFlight: false, seed: seed ?? state.seed };
}
