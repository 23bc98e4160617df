// Builds one widget per schema descriptor and keeps it in sync with state.

import { clampValue } from './state.js';
import type { ControlValue, Schema, SchemaControl } from './types.js';

export type ControlChangeHandler = (name: string, value: ControlValue) => void;

function sliderRow(control: SchemaControl & { type: 'slider' }, onChange: ControlChangeHandler) {
  const row = document.createElement('label');
  row.className = 'control-row';

  const caption = document.createElement('span');
  caption.textContent = control.unit ? `${control.label} (${control.unit})` : control.label;

  const slider = document.createElement('input');
  slider.type = 'range';
  slider.min = String(control.range[0]);
  slider.max = String(control.range[1]);
  slider.step = String(control.step);
  slider.value = String(control.default);
  slider.name = control.name;

  const readout = document.createElement('output');
  readout.textContent = String(control.default);

  slider.addEventListener('input', () => {
    const value = clampValue(control, Number(slider.value));
    readout.textContent = String(value);
    onChange(control.name, value);
  });

  row.append(caption, slider, readout);
  return row;
}

function toggleRow(control: SchemaControl & { type: 'toggle' }, onChange: ControlChangeHandler) {
  const row = document.createElement('label');
  row.className = 'control-row';

  const caption = document.createElement('span');
  caption.textContent = control.label;

  const box = document.createElement('input');
  box.type = 'checkbox';
  box.checked = control.default;
  box.name = control.name;
  box.addEventListener('change', () => onChange(control.name, box.checked));

  row.append(caption, box);
  return row;
}

function selectRow(control: SchemaControl & { type: 'select' }, onChange: ControlChangeHandler) {
  const row = document.createElement('label');
  row.className = 'control-row';

  const caption = document.createElement('span');
  caption.textContent = control.label;

  const select = document.createElement('select');
  select.name = control.name;
  for (const option of control.options) {
    const entry = document.createElement('option');
    entry.value = option.value;
    entry.textContent = option.label;
    entry.selected = option.value === control.default;
    select.append(entry);
  }
  select.addEventListener('change', () => onChange(control.name, clampValue(control, select.value)));

  row.append(caption, select);
  return row;
}

export function renderControls(
  host: HTMLElement,
  schema: Schema,
  onChange: ControlChangeHandler,
): void {
  host.textContent = '';
  for (const control of schema.controls) {
    if (control.type === 'slider') host.append(sliderRow(control, onChange));
    else if (control.type === 'toggle') host.append(toggleRow(control, onChange));
    else host.append(selectRow(control, onChange));
  }
}

export function setControlsEnabled(host: HTMLElement, enabled: boolean): void {
  for (const element of host.querySelectorAll('input, select')) {
    (element as HTMLInputElement | HTMLSelectElement).disabled = !enabled;
  }
}
