export interface SliderControl {
  name: string;
  type: 'slider';
  range: [number, number];
  step: number;
  default: number;
  unit: string;
  label: string;
}

export interface ToggleControl {
  name: string;
  type: 'toggle';
  default: boolean;
  label: string;
}

export interface SelectControl {
  name: string;
  type: 'select';
  options: { value: string; label: string }[];
  default: string;
  label: string;
}

export type SchemaControl = SliderControl | ToggleControl | SelectControl;

export interface Schema {
  controls: SchemaControl[];
}

export type ControlValue = number | boolean | string;

export interface ControlState {
  values: Record<string, ControlValue>;
  seed: number | null; // last-used seed; null means "let the server draw one"
  inFlight: boolean;
}

export interface RenderSuccess {
  ok: true;
  seed: number;
  wav: ArrayBuffer;
}

export interface RenderFailure {
  ok: false;
  field: string | null; // named field for validation errors
  message: string;
}

export type RenderResult = RenderSuccess | RenderFailure;
