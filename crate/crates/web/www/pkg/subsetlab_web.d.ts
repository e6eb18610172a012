/* tslint:disable */
/* eslint-disable */

/**
 * Exact and simulated outcome probabilities of the box `B'_{a1,a2/b}`.
 */
export function box_sim(a1: number, a2: number, b: number, trials: number, seed: number): string;

/**
 * `[{q, pi0, pi1, pi2, qf, pi1f}, ...]` over the Farey grid of order `max_den`.
 */
export function family_scan(family: string, max_den: number): string;

/**
 * Jump report for `pi1` at `q0`, approached from below or above.
 */
export function jump(family: string, q0: string, depth: number, from_above: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly box_sim: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly family_scan: (a: number, b: number, c: number) => [number, number];
    readonly jump: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
