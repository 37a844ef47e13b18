/* tslint:disable */
/* eslint-disable */

/**
 * Both matchers' verdicts for a candidate against a template.
 */
export function compare(template_segments: Float64Array, candidate_segments: Float64Array, bins: number, tau: number, span_tolerance: number): string;

/**
 * Monte Carlo FRR at each jitter level plus FAR against random guesses.
 */
export function rates(template_segments: Float64Array, sigmas: Float64Array, trials: number, seed: bigint, bins: number, tau: number, span_tolerance: number): string;

/**
 * Phrase segments from alternating press/release timestamps.
 */
export function record(times: Float64Array, min_segment_ms: number): string;

/**
 * Span-normalized occupancy signal of a phrase.
 */
export function signal(segments: Float64Array, bins: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly compare: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly rates: (a: number, b: number, c: number, d: number, e: number, f: bigint, g: number, h: number, i: number) => [number, number, number, number];
    readonly record: (a: number, b: number, c: number) => [number, number, number, number];
    readonly signal: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
