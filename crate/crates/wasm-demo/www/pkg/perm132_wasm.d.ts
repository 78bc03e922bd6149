/* tslint:disable */
/* eslint-disable */

/**
 * Kernel, shape and cell grid of a permutation given as digits or a
 * comma/space separated list.
 */
export function decompose_permutation(text: string): string;

/**
 * Series for exactly `r` occurrences and no increasing run of length `k`.
 */
export function phi_coefficients(r: number, k: number, order: number): string;

/**
 * Series coefficients for exactly `r` occurrences, with `2P` and `2Q` of
 * the closed form when they are integer polynomials.
 */
export function psi_coefficients(r: number, order: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly decompose_permutation: (a: number, b: number) => [number, number];
    readonly phi_coefficients: (a: number, b: number, c: number) => [number, number];
    readonly psi_coefficients: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
