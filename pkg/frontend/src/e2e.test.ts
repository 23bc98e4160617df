// Round-trip against a live render service. Skipped unless THUNDER_API is
// set, e.g.:  THUNDER_API=http://127.0.0.1:8781 npm test

import { describe, expect, it } from 'vitest';

import { fetchSchema, postRender } from './api.js';
import { sha256Hex } from './checksum.js';
import { buildRenderRequest, defaultState } from './state.js';

const BASE = process.env.THUNDER_API ?? '';
const describeLive = BASE ? describe : describe.skip;

describeLive('live service round trip', () => {
  it('loads a six-control schema', async () => {
    const schema = await fetchSchema(BASE);
    expect(schema.controls).toHaveLength(6);
    const names = schema.controls.map((c) => c.name);
    expect(names).toContain('distance');
    expect(names).toContain('preset');
  });

  it('renders a playable WAV and replays it byte-identically', async () => {
    const schema = await fetchSchema(BASE);
    const state = defaultState(schema);
    // keep the render short for the test
    state.values.distance = 50;

    const first = await postRender(buildRenderRequest(state, schema, null), BASE);
    expect(first.ok).toBe(true);
    if (!first.ok) return;
    const header = new TextDecoder().decode(first.wav.slice(0, 4));
    expect(header).toBe('RIFF');

    const replay = await postRender(buildRenderRequest(state, schema, first.seed), BASE);
    expect(replay.ok).toBe(true);
    if (!replay.ok) return;
    expect(replay.seed).toBe(first.seed);
    expect(await sha256Hex(replay.wav)).toBe(await sha256Hex(first.wav));
  }, 120_000);

  it('names the offending field on validation errors', async () => {
    const result = await postRender({ distance: 99999 }, BASE);
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.field).toBe('distance');
  });
});
