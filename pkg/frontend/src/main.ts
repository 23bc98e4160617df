import { fetchSchema, postRender } from './api.js';
import { sha256Hex } from './checksum.js';
import { renderControls, setControlsEnabled } from './controls.js';
import { beginRender, buildRenderRequest, defaultState, finishRender, parseSeed, setControl } from './state.js';
import type { ControlState, Schema } from './types.js';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showBanner(text: string, retry: (() => void) | null): void {
  const banner = el<HTMLDivElement>('banner');
  banner.textContent = '';
  banner.hidden = false;
  banner.append(text);
  if (retry) {
    const button = document.createElement('button');
    button.textContent = 'Retry';
    button.addEventListener('click', () => {
      banner.hidden = true;
      retry();
    });
    banner.append(' ', button);
  }
}

function hideBanner(): void {
  el<HTMLDivElement>('banner').hidden = true;
}

function showFieldError(text: string | null): void {
  const node = el<HTMLDivElement>('field-error');
  node.hidden = text === null;
  node.textContent = text ?? '';
}

async function boot(): Promise<void> {
  let schema: Schema;
  try {
    schema = await fetchSchema();
  } catch (err) {
    showBanner(String(err), () => void boot());
    return;
  }
  hideBanner();

  let state: ControlState = defaultState(schema);
  const panel = el<HTMLDivElement>('controls');
  renderControls(panel, schema, (name, value) => {
    state = setControl(state, schema, name, value);
  });

  const seedBox = el<HTMLInputElement>('seed');
  const player = el<HTMLAudioElement>('player');
  const checksumOut = el<HTMLElement>('checksum');
  const seedOut = el<HTMLElement>('last-seed');
  let playbackUrl: string | null = null;

  async function trigger(seed: number | null): Promise<void> {
    const started = beginRender(state);
    if (started === null) return; // a render is already in flight
    state = started;
    setControlsEnabled(panel, false);
    showFieldError(null);
    try {
      const result = await postRender(buildRenderRequest(state, schema, seed));
      if (!result.ok) {
        state = finishRender(state, null);
        if (result.field) showFieldError(`${result.field}: ${result.message}`);
        else showBanner(result.message, null);
        return;
      }
      state = finishRender(state, result.seed);
      seedOut.textContent = String(result.seed);
      seedBox.value = String(result.seed);
      checksumOut.textContent = await sha256Hex(result.wav);
      if (playbackUrl) URL.revokeObjectURL(playbackUrl);
      playbackUrl = URL.createObjectURL(new Blob([result.wav], { type: 'audio/wav' }));
      player.src = playbackUrl;
      void player.play().catch(() => undefined); // autoplay may need a gesture
    } finally {
      state = { ...state, inFlight: false };
      setControlsEnabled(panel, true);
    }
  }

  el<HTMLButtonElement>('trigger').addEventListener('click', () => void trigger(parseSeed(seedBox.value)));
  el<HTMLButtonElement>('surprise').addEventListener('click', () => {
    seedBox.value = '';
    void trigger(null);
  });
  el<HTMLButtonElement>('replay').addEventListener('click', () => {
    if (state.seed !== null) void trigger(state.seed);
  });
}

void boot();
