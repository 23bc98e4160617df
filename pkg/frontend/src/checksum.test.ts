import { describe, expect, it } from 'vitest';

import { sha256Hex } from './checksum.js';

describe('sha256Hex', () => {
  it('matches the known digest of "abc"', async () => {
    const data = new TextEncoder().encode('abc');
    const buffer = data.buffer.slice(0) as ArrayBuffer;
    expect(await sha256Hex(buffer)).toBe(
      'ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad',
    );
  });

  it('distinguishes different payloads', async () => {
    const a = await sha256Hex(new Uint8Array([1, 2, 3]).buffer as ArrayBuffer);
    const b = await sha256Hex(new Uint8Array([1, 2, 4]).buffer as ArrayBuffer);
    expect(a).not.toBe(b);
    expect(a).toHaveLength(64);
  });
});
