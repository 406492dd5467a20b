/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_constants_free: (a: number, b: number) => void;
export const __wbg_get_constants_c0: (a: number) => number;
export const __wbg_get_constants_c_e: (a: number) => number;
export const __wbg_get_constants_c_e2: (a: number) => number;
export const __wbg_get_constants_c_j: (a: number) => number;
export const __wbg_get_constants_c_m: (a: number) => number;
export const __wbg_get_constants_l: (a: number) => number;
export const __wbg_get_constants_mu: (a: number) => number;
export const __wbg_get_verdict_millis: (a: number) => number;
export const __wbg_get_verdict_min_value: (a: number) => number;
export const __wbg_get_verdict_oracle: (a: number) => [number, number];
export const __wbg_get_verdict_samples: (a: number) => number;
export const __wbg_get_verdict_theory: (a: number) => [number, number];
export const __wbg_get_verdict_worst_x: (a: number) => number;
export const __wbg_get_verdict_worst_y: (a: number) => number;
export const __wbg_set_constants_c0: (a: number, b: number) => void;
export const __wbg_set_constants_c_e: (a: number, b: number) => void;
export const __wbg_set_constants_c_e2: (a: number, b: number) => void;
export const __wbg_set_constants_c_j: (a: number, b: number) => void;
export const __wbg_set_constants_c_m: (a: number, b: number) => void;
export const __wbg_set_constants_l: (a: number, b: number) => void;
export const __wbg_set_constants_mu: (a: number, b: number) => void;
export const __wbg_set_verdict_millis: (a: number, b: number) => void;
export const __wbg_set_verdict_min_value: (a: number, b: number) => void;
export const __wbg_set_verdict_oracle: (a: number, b: number, c: number) => void;
export const __wbg_set_verdict_samples: (a: number, b: number) => void;
export const __wbg_set_verdict_theory: (a: number, b: number, c: number) => void;
export const __wbg_set_verdict_worst_x: (a: number, b: number) => void;
export const __wbg_set_verdict_worst_y: (a: number, b: number) => void;
export const __wbg_verdict_free: (a: number, b: number) => void;
export const constants: (a: number) => [number, number, number];
export const elliptic_verdict: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const hill_curvature: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
