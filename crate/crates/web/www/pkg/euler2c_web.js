/* @ts-self-types="./euler2c_web.d.ts" */

export class Constants {
    static __wrap(ptr) {
        const obj = Object.create(Constants.prototype);
        obj.__wbg_ptr = ptr;
        ConstantsFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ConstantsFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_constants_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get c0() {
        const ret = wasm.__wbg_get_constants_c0(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get c_e2() {
        const ret = wasm.__wbg_get_constants_c_e2(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get c_e() {
        const ret = wasm.__wbg_get_constants_c_e(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get c_j() {
        const ret = wasm.__wbg_get_constants_c_j(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get c_m() {
        const ret = wasm.__wbg_get_constants_c_m(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get l() {
        const ret = wasm.__wbg_get_constants_l(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get mu() {
        const ret = wasm.__wbg_get_constants_mu(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set c0(arg0) {
        wasm.__wbg_set_constants_c0(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set c_e2(arg0) {
        wasm.__wbg_set_constants_c_e2(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set c_e(arg0) {
        wasm.__wbg_set_constants_c_e(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set c_j(arg0) {
        wasm.__wbg_set_constants_c_j(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set c_m(arg0) {
        wasm.__wbg_set_constants_c_m(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set l(arg0) {
        wasm.__wbg_set_constants_l(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set mu(arg0) {
        wasm.__wbg_set_constants_mu(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Constants.prototype[Symbol.dispose] = Constants.prototype.free;

export class Verdict {
    static __wrap(ptr) {
        const obj = Object.create(Verdict.prototype);
        obj.__wbg_ptr = ptr;
        VerdictFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        VerdictFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_verdict_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get millis() {
        const ret = wasm.__wbg_get_verdict_millis(this.__wbg_ptr);
        return ret;
    }
    /**
     * Smallest tangential Hessian eigenvalue seen by the oracle.
     * @returns {number}
     */
    get min_value() {
        const ret = wasm.__wbg_get_verdict_min_value(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {string}
     */
    get oracle() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.__wbg_get_verdict_oracle(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * @returns {number}
     */
    get samples() {
        const ret = wasm.__wbg_get_verdict_samples(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * `Convex` or `NonConvex`.
     * @returns {string}
     */
    get theory() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.__wbg_get_verdict_theory(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * Position of the worst sample in the standard frame.
     * @returns {number}
     */
    get worst_x() {
        const ret = wasm.__wbg_get_verdict_worst_x(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get worst_y() {
        const ret = wasm.__wbg_get_verdict_worst_y(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set millis(arg0) {
        wasm.__wbg_set_verdict_millis(this.__wbg_ptr, arg0);
    }
    /**
     * Smallest tangential Hessian eigenvalue seen by the oracle.
     * @param {number} arg0
     */
    set min_value(arg0) {
        wasm.__wbg_set_verdict_min_value(this.__wbg_ptr, arg0);
    }
    /**
     * @param {string} arg0
     */
    set oracle(arg0) {
        const ptr0 = passStringToWasm0(arg0, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_verdict_oracle(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set samples(arg0) {
        wasm.__wbg_set_verdict_samples(this.__wbg_ptr, arg0);
    }
    /**
     * `Convex` or `NonConvex`.
     * @param {string} arg0
     */
    set theory(arg0) {
        const ptr0 = passStringToWasm0(arg0, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_verdict_theory(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * Position of the worst sample in the standard frame.
     * @param {number} arg0
     */
    set worst_x(arg0) {
        wasm.__wbg_set_verdict_worst_x(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set worst_y(arg0) {
        wasm.__wbg_set_verdict_worst_y(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Verdict.prototype[Symbol.dispose] = Verdict.prototype.free;

/**
 * Critical energy and convexity thresholds for a mass ratio.
 * @param {number} mu
 * @returns {Constants}
 */
export function constants(mu) {
    const ret = wasm.constants(mu);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Constants.__wrap(ret[0]);
}

/**
 * Elliptic-regularization verdict from theory and from a sampled oracle on an
 * `n x n x 8` grid.
 * @param {number} mu
 * @param {number} c
 * @param {string} component
 * @param {number} n
 * @returns {Verdict}
 */
export function elliptic_verdict(mu, c, component, n) {
    const ptr0 = passStringToWasm0(component, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.elliptic_verdict(mu, c, ptr0, len0, n);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Verdict.__wrap(ret[0]);
}

/**
 * Hill boundary of one component as `[x, y, kappa, x, y, kappa, ...]`.
 *
 * `component` is `"earth"` or `"moon"`; `c` may equal the critical energy.
 * @param {number} mu
 * @param {number} c
 * @param {string} component
 * @param {number} rays
 * @returns {Float64Array}
 */
export function hill_curvature(mu, c, component, rays) {
    const ptr0 = passStringToWasm0(component, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.hill_curvature(mu, c, ptr0, len0, rays);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v2 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v2;
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_is_undefined_8865fb403f8fe9d8: function(arg0) {
            const ret = arg0 === undefined;
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbg_now_e7c6795a7f81e10f: function(arg0) {
            const ret = arg0.now();
            return ret;
        },
        __wbg_performance_3fcf6e32a7e1ed0a: function(arg0) {
            const ret = arg0.performance;
            return ret;
        },
        __wbg_static_accessor_GLOBAL_266715b9d96ba635: function() {
            const ret = typeof global === 'undefined' ? null : global;
            return isLikeNone(ret) ? 0 : addToExternrefTable0(ret);
        },
        __wbg_static_accessor_GLOBAL_THIS_10fb7dc1ae063179: function() {
            const ret = typeof globalThis === 'undefined' ? null : globalThis;
            return isLikeNone(ret) ? 0 : addToExternrefTable0(ret);
        },
        __wbg_static_accessor_SELF_0b583911f537483a: function() {
            const ret = typeof self === 'undefined' ? null : self;
            return isLikeNone(ret) ? 0 : addToExternrefTable0(ret);
        },
        __wbg_static_accessor_WINDOW_d7f903d1508cbdc4: function() {
            const ret = typeof window === 'undefined' ? null : window;
            return isLikeNone(ret) ? 0 : addToExternrefTable0(ret);
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./euler2c_web_bg.js": import0,
    };
}

const ConstantsFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_constants_free(ptr, 1));
const VerdictFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_verdict_free(ptr, 1));

function addToExternrefTable0(obj) {
    const idx = wasm.__externref_table_alloc();
    wasm.__wbindgen_externrefs.set(idx, obj);
    return idx;
}

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function isLikeNone(x) {
    return x === undefined || x === null;
}

function passStringToWasm0(arg, malloc, realloc) {
    if (realloc === undefined) {
        const buf = cachedTextEncoder.encode(arg);
        const ptr = malloc(buf.length, 1) >>> 0;
        getUint8ArrayMemory0().subarray(ptr, ptr + buf.length).set(buf);
        WASM_VECTOR_LEN = buf.length;
        return ptr;
    }

    let len = arg.length;
    let ptr = malloc(len, 1) >>> 0;

    const mem = getUint8ArrayMemory0();

    let offset = 0;

    for (; offset < len; offset++) {
        const code = arg.charCodeAt(offset);
        if (code > 0x7F) break;
        mem[ptr + offset] = code;
    }
    if (offset !== len) {
        if (offset !== 0) {
            arg = arg.slice(offset);
        }
        ptr = realloc(ptr, len, len = offset + arg.length * 3, 1) >>> 0;
        const view = getUint8ArrayMemory0().subarray(ptr + offset, ptr + len);
        const ret = cachedTextEncoder.encodeInto(arg, view);

        offset += ret.written;
        ptr = realloc(ptr, len, offset, 1) >>> 0;
    }

    WASM_VECTOR_LEN = offset;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

const cachedTextEncoder = new TextEncoder();

if (!('encodeInto' in cachedTextEncoder)) {
    cachedTextEncoder.encodeInto = function (arg, view) {
        const buf = cachedTextEncoder.encode(arg);
        view.set(buf);
        return {
            read: arg.length,
            written: buf.length
        };
    };
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('euler2c_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
