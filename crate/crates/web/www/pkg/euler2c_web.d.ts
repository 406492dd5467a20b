/* tslint:disable */
/* eslint-disable */

export class Constants {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    c0: number;
    c_e2: number;
    c_e: number;
    c_j: number;
    c_m: number;
    l: number;
    mu: number;
}

export class Verdict {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    millis: number;
    /**
     * Smallest tangential Hessian eigenvalue seen by the oracle.
     */
    min_value: number;
    oracle: string;
    samples: number;
    /**
     * `Convex` or `NonConvex`.
     */
    theory: string;
    /**
     * Position of the worst sample in the standard frame.
     */
    worst_x: number;
    worst_y: number;
}

/**
 * Critical energy and convexity thresholds for a mass ratio.
 */
export function constants(mu: number): Constants;

/**
 * Elliptic-regularization verdict from theory and from a sampled oracle on an
 * `n x n x 8` grid.
 */
export function elliptic_verdict(mu: number, c: number, component: string, n: number): Verdict;

/**
 * Hill boundary of one component as `[x, y, kappa, x, y, kappa, ...]`.
 *
 * `component` is `"earth"` or `"moon"`; `c` may equal the critical energy.
 */
export function hill_curvature(mu: number, c: number, component: string, rays: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_constants_free: (a: number, b: number) => void;
    readonly __wbg_get_constants_c0: (a: number) => number;
    readonly __wbg_get_constants_c_e: (a: number) => number;
    readonly __wbg_get_constants_c_e2: (a: number) => number;
    readonly __wbg_get_constants_c_j: (a: number) => number;
    readonly __wbg_get_constants_c_m: (a: number) => number;
    readonly __wbg_get_constants_l: (a: number) => number;
    readonly __wbg_get_constants_mu: (a: number) => number;
    readonly __wbg_get_verdict_millis: (a: number) => number;
    readonly __wbg_get_verdict_min_value: (a: number) => number;
    readonly __wbg_get_verdict_oracle: (a: number) => [number, number];
    readonly __wbg_get_verdict_samples: (a: number) => number;
    readonly __wbg_get_verdict_theory: (a: number) => [number, number];
    readonly __wbg_get_verdict_worst_x: (a: number) => number;
    readonly __wbg_get_verdict_worst_y: (a: number) => number;
    readonly __wbg_set_constants_c0: (a: number, b: number) => void;
    readonly __wbg_set_constants_c_e: (a: number, b: number) => void;
    readonly __wbg_set_constants_c_e2: (a: number, b: number) => void;
    readonly __wbg_set_constants_c_j: (a: number, b: number) => void;
    readonly __wbg_set_constants_c_m: (a: number, b: number) => void;
    readonly __wbg_set_constants_l: (a: number, b: number) => void;
    readonly __wbg_set_constants_mu: (a: number, b: number) => void;
    readonly __wbg_set_verdict_millis: (a: number, b: number) => void;
    readonly __wbg_set_verdict_min_value: (a: number, b: number) => void;
    readonly __wbg_set_verdict_oracle: (a: number, b: number, c: number) => void;
    readonly __wbg_set_verdict_samples: (a: number, b: number) => void;
    readonly __wbg_set_verdict_theory: (a: number, b: number, c: number) => void;
    readonly __wbg_set_verdict_worst_x: (a: number, b: number) => void;
    readonly __wbg_set_verdict_worst_y: (a: number, b: number) => void;
    readonly __wbg_verdict_free: (a: number, b: number) => void;
    readonly constants: (a: number) => [number, number, number];
    readonly elliptic_verdict: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly hill_curvature: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __externref_table_alloc: () => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
