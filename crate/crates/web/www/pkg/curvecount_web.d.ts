/* tslint:disable */
/* eslint-disable */

/**
 * Invariants of a germ plus the standard monomials of its local algebras.
 */
export function analyze_germ(expr: string): string;

/**
 * Fits the node polynomials `T_0..T_max_r` and evaluates them at an optional
 * Chern vector `"L^2,LK,c1^2,c2"`.
 */
export function node_polynomials(max_r: number, chern: string): string;

/**
 * Severi degrees for every degree up to `max_degree` (every bidegree
 * `a <= b` on `P1xP1`) and node counts `0..=max_nodes`.
 */
export function severi_table(surface: string, max_degree: number, max_nodes: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_germ: (a: number, b: number) => [number, number];
    readonly node_polynomials: (a: number, b: number, c: number) => [number, number];
    readonly severi_table: (a: number, b: number, c: number, d: number) => [number, number];
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
