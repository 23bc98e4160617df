// Thin typed wrappers over the render service's HTTP API.

import type { RenderResult, Schema } from './types.js';

export const SEED_HEADER = 'X-Thunder-Seed';

export class SchemaError extends Error {}

export async function fetchSchema(baseUrl = ''): Promise<Schema> {
  let response: Response;
  try {
    response = await fetch(`${baseUrl}/api/schema`);
  } catch (err) {
    throw new SchemaError(`service unreachable: ${String(err)}`);
  }
  if (!response.ok) {
    throw new SchemaError(`schema request failed with status ${response.status}`);
  }
  const schema = (await response.json()) as Schema;
  if (!Array.isArray(schema.controls) || schema.controls.length === 0) {
    throw new SchemaError('schema carries no controls');
  }
  return schema;
}

export async function postRender(
  body: Record<string, unknown>,
  baseUrl = '',
): Promise<RenderResult> {
  let response: Response;
  try {
    response = await fetch(`${baseUrl}/api/render`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  } catch (err) {
    return { ok: false, field: null, message: `network failure: ${String(err)}` };
  }
  if (!response.ok) {
    let field: string | null = null;
    let message = `render failed with status ${response.status}`;
    try {
      const payload = (await response.json()) as { error?: { field?: string; message?: string } };
      field = payload.error?.field ?? null;
      message = payload.error?.message ?? message;
    } catch {
      // non-JSON error body; keep the status message
    }
    return { ok: false, field, message };
  }
  const seedText = response.headers.get(SEED_HEADER);
  const seed = seedText === null ? NaN : Number(seedText);
  if (!Number.isSafeInteger(seed)) {
    return { ok: false, field: null, message: 'response carried no usable seed header' };
  }
  return { ok: true, seed, wav: await response.arrayBuffer() };
}
