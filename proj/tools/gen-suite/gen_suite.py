#!/usr/bin/env python3
"""Generates the corpus/suite/*.minwast conformance scripts.

Expected values are computed here, independently of the C++ interpreters,
and frozen into the generated files. Run from the repository root:

    python3 tools/gen-suite/gen_suite.py
"""

import os
import struct

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "corpus", "suite")

# ---------------------------------------------------------------------------
# integer semantics

def mask(w):
    return (1 << w) - 1

def signed(x, w):
    x &= mask(w)
    return x - (1 << w) if x >> (w - 1) else x

def unsigned(x, w):
    return x & mask(w)

def trunc_div(a, b):
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q

def int_binop(op, a, b, w):
    """Returns result bits, or None for a trap."""
    au, bu = unsigned(a, w), unsigned(b, w)
    asn, bsn = signed(a, w), signed(b, w)
    if op == "add":
        return unsigned(au + bu, w)
    if op == "sub":
        return unsigned(au - bu, w)
    if op == "mul":
        return unsigned(au * bu, w)
    if op == "div_s":
        if bsn == 0:
            return None
        if asn == -(1 << (w - 1)) and bsn == -1:
            return None
        return unsigned(trunc_div(asn, bsn), w)
    if op == "div_u":
        if bu == 0:
            return None
        return au // bu
    if op == "rem_s":
        if bsn == 0:
            return None
        if asn == -(1 << (w - 1)) and bsn == -1:
            return 0
        return unsigned(asn - bsn * trunc_div(asn, bsn), w)
    if op == "rem_u":
        if bu == 0:
            return None
        return au % bu
    if op == "and":
        return au & bu
    if op == "or":
        return au | bu
    if op == "xor":
        return au ^ bu
    n = bu & (w - 1)
    if op == "shl":
        return unsigned(au << n, w)
    if op == "shr_u":
        return au >> n
    if op == "shr_s":
        return unsigned(asn >> n, w)
    if op == "rotl":
        return unsigned((au << n) | (au >> (w - n)), w) if n else au
    if op == "rotr":
        return unsigned((au >> n) | (au << (w - n)), w) if n else au
    raise ValueError(op)

def int_unop(op, a, w):
    au = unsigned(a, w)
    if op == "clz":
        if au == 0:
            return w
        n = 0
        for i in range(w - 1, -1, -1):
            if au >> i & 1:
                break
            n += 1
        return n
    if op == "ctz":
        if au == 0:
            return w
        n = 0
        while not au >> n & 1:
            n += 1
        return n
    if op == "popcnt":
        return bin(au).count("1")
    raise ValueError(op)

def int_relop(op, a, b, w):
    au, bu = unsigned(a, w), unsigned(b, w)
    asn, bsn = signed(a, w), signed(b, w)
    table = {
        "eq": au == bu, "ne": au != bu,
        "lt_s": asn < bsn, "lt_u": au < bu,
        "gt_s": asn > bsn, "gt_u": au > bu,
        "le_s": asn <= bsn, "le_u": au <= bu,
        "ge_s": asn >= bsn, "ge_u": au >= bu,
    }
    return 1 if table[op] else 0

# ---------------------------------------------------------------------------
# float semantics

NAN32 = 0x7FC00000
NAN64 = 0x7FF8000000000000

def f32(x):
    return struct.unpack("f", struct.pack("f", x))[0]

def f32_bits(x):
    return struct.unpack("I", struct.pack("f", x))[0]

def f64_bits(x):
    return struct.unpack("Q", struct.pack("d", x))[0]

def is_nan(x):
    return x != x

def float_binop(op, a, b, is32):
    # Exact f32 semantics: double arithmetic on f32 inputs rounds correctly
    # when re-rounded to f32 (the precision gap is wide enough).
    if op in ("add", "sub", "mul", "div"):
        try:
            if op == "add":
                r = a + b
            elif op == "sub":
                r = a - b
            elif op == "mul":
                r = a * b
            else:
                r = a / b if b != 0 or is_nan(a) or is_nan(b) else (
                    float("nan") if a == 0 and not is_nan(a) else
                    float("inf") if (a > 0) == (str(b)[0] != "-") else float("-inf"))
        except ZeroDivisionError:
            r = float("nan")
        return f32(r) if is32 else r
    if op == "min":
        if is_nan(a) or is_nan(b):
            return float("nan")
        if a == 0 and b == 0:
            return a if struct.pack("d", a)[7] & 0x80 else b
        return min(a, b)
    if op == "max":
        if is_nan(a) or is_nan(b):
            return float("nan")
        if a == 0 and b == 0:
            return b if struct.pack("d", a)[7] & 0x80 else a
        return max(a, b)
    raise ValueError(op)

# ---------------------------------------------------------------------------
# literal formatting

def fmt_int(bits, w):
    return f"0x{bits:x}" if bits > 9 else str(bits)

def fmt_float(x, is32):
    if is_nan(x):
        return "nan"
    if x == float("inf"):
        return "inf"
    if x == float("-inf"):
        return "-inf"
    if x == 0:
        return "-0x0p+0" if struct.pack("d", x)[7] & 0x80 else "0x0p+0"
    return x.hex()

def const(ty, lit):
    return f"({ty}.const {lit})"

# ---------------------------------------------------------------------------
# script assembly

class Suite:
    def __init__(self):
        self.files = {}
        self.counts = {}  # opcode -> number of assertions touching it

    def add(self, name, text):
        self.files[name] = text

    def count(self, opcodes, n=1):
        for op in opcodes:
            self.counts[op] = self.counts.get(op, 0) + n

    def write(self):
        os.makedirs(OUT_DIR, exist_ok=True)
        for name in sorted(self.files):
            path = os.path.join(OUT_DIR, name)
            with open(path, "w") as f:
                f.write(self.files[name])
        total = 0
        for name in sorted(self.files):
            n = self.files[name].count("(assert_")
            total += n
            print(f"  {name}: {n} assertions")
        print(f"total: {total} assertions")


def gen_int_ops(suite, w):
    ty = f"i{w}"
    mod = [f"(module"]
    asserts = []
    MIN = 1 << (w - 1)
    MAX = MIN - 1

    bin_cases = {
        "add": [(1, 2), (mask(w), 1), (MAX, 1)],
        "sub": [(5, 3), (0, 1), (MIN, 1)],
        "mul": [(7, 6), (1 << (w // 2), 1 << (w // 2)), (mask(w), mask(w))],
        "div_s": [(7, 2), (unsigned(-7, w), 2), (MIN, mask(w)), (1, 0)],
        "div_u": [(7, 2), (mask(w) - 1, 2), (1, 0)],
        "rem_s": [(7, 3), (unsigned(-7, w), 3), (MIN, mask(w)), (5, 0)],
        "rem_u": [(7, 3), (mask(w), 10), (5, 0)],
        "and": [(0b1100, 0b1010), (mask(w), 0), (mask(w), mask(w))],
        "or": [(0b1100, 0b1010), (0, 0), (MIN, 1)],
        "xor": [(0b1100, 0b1010), (mask(w), mask(w)), (mask(w), 0)],
        "shl": [(1, 1), (1, w), (MIN, 1)],
        "shr_s": [(unsigned(-8, w), 1), (MIN, w - 1), (1, w + 1)],
        "shr_u": [(unsigned(-8, w), 1), (1, w), (MIN, w - 1)],
        "rotl": [(MIN | 1, 1), (1, w + 1), (0xABCD, 0)],
        "rotr": [(3, 1), (1, w), (MIN, w - 1)],
    }
    for op, cases in bin_cases.items():
        fname = f"{op}"
        mod.append(
            f'  (func (export "{fname}") (param {ty} {ty}) (result {ty})\n'
            f"    local.get 0\n    local.get 1\n    {ty}.{op})")
        for a, b in cases:
            r = int_binop(op, a, b, w)
            call = f'(invoke "{fname}" {const(ty, fmt_int(a, w))} {const(ty, fmt_int(b, w))})'
            if r is None:
                asserts.append(f"(assert_trap {call})")
            else:
                asserts.append(f"(assert_return {call} {const(ty, fmt_int(r, w))})")
            suite.count([f"{ty}.{op}", "local.get"])

    un_cases = {
        "clz": [(0, None), (1, None), (MIN, None)],
        "ctz": [(0, None), (MIN, None), (0b1000, None)],
        "popcnt": [(0, None), (mask(w), None), (0b10110, None)],
    }
    for op, cases in un_cases.items():
        mod.append(
            f'  (func (export "{op}") (param {ty}) (result {ty})\n'
            f"    local.get 0\n    {ty}.{op})")
        for a, _ in cases:
            r = int_unop(op, a, w)
            asserts.append(
                f'(assert_return (invoke "{op}" {const(ty, fmt_int(a, w))}) '
                f"{const(ty, fmt_int(r, w))})")
            suite.count([f"{ty}.{op}", "local.get"])

    mod.append(
        f'  (func (export "eqz") (param {ty}) (result i32)\n'
        f"    local.get 0\n    {ty}.eqz)")
    for a in (0, 1, mask(w)):
        r = 1 if unsigned(a, w) == 0 else 0
        asserts.append(
            f'(assert_return (invoke "eqz" {const(ty, fmt_int(a, w))}) '
            f"(i32.const {r}))")
        suite.count([f"{ty}.eqz", "local.get"])

    rel_cases = [(0, 0), (1, 2), (unsigned(-1, w), 0), (MIN, MAX),
                 (MAX, MIN), (unsigned(-7, w), unsigned(-7, w))]
    for op in ("eq", "ne", "lt_s", "lt_u", "gt_s", "gt_u",
               "le_s", "le_u", "ge_s", "ge_u"):
        mod.append(
            f'  (func (export "{op}") (param {ty} {ty}) (result i32)\n'
            f"    local.get 0\n    local.get 1\n    {ty}.{op})")
        for a, b in rel_cases:
            r = int_relop(op, a, b, w)
            asserts.append(
                f'(assert_return (invoke "{op}" {const(ty, fmt_int(a, w))} '
                f"{const(ty, fmt_int(b, w))}) (i32.const {r}))")
            suite.count([f"{ty}.{op}", "local.get"])

    mod.append(")")
    text = ";; Integer operators, " + ty + ". Generated by tools/gen-suite.\n\n"
    text += "\n".join(mod) + "\n\n" + "\n".join(asserts) + "\n"
    suite.add(f"{ty}_ops.minwast", text)


def gen_float_ops(suite, w):
    ty = f"f{w}"
    is32 = w == 32
    rnd = (lambda x: f32(x)) if is32 else (lambda x: x)
    mod = ["(module"]
    asserts = []

    inf = float("inf")
    nan = float("nan")

    bin_cases = {
        "add": [(1.5, 2.25), (0.1, 0.2), (inf, -inf), (nan, 1.0)],
        "sub": [(1.0, 0.5), (inf, inf), (-0.0, 0.0)],
        "mul": [(3.0, 4.0), (inf, 0.0), (1e30, 1e30)],
        "div": [(1.0, 2.0), (0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)],
        "min": [(1.0, 2.0), (0.0, -0.0), (nan, 1.0), (-inf, 1.0)],
        "max": [(1.0, 2.0), (0.0, -0.0), (nan, 1.0), (inf, 1.0)],
    }
    for op, cases in bin_cases.items():
        mod.append(
            f'  (func (export "{op}") (param {ty} {ty}) (result {ty})\n'
            f"    local.get 0\n    local.get 1\n    {ty}.{op})")
        for a, b in cases:
            a, b = rnd(a), rnd(b)
            r = float_binop(op, a, b, is32)
            asserts.append(
                f'(assert_return (invoke "{op}" {const(ty, fmt_float(a, is32))} '
                f"{const(ty, fmt_float(b, is32))}) {const(ty, fmt_float(r, is32))})")
            suite.count([f"{ty}.{op}", "local.get"])

    def fneg(x):
        if is_nan(x):
            return x  # sign flip handled via bits below
        return -x

    un_cases = {
        "neg": [1.5, -0.0, 0.0, inf],
        "abs": [-2.5, -0.0, -inf],
        "sqrt": [4.0, 2.0, -1.0, -0.0],
    }
    for op, cases in un_cases.items():
        mod.append(
            f'  (func (export "{op}") (param {ty}) (result {ty})\n'
            f"    local.get 0\n    {ty}.{op})")
        for a in cases:
            a = rnd(a)
            if op == "neg":
                r = fneg(a)
                lit = fmt_float(r, is32)
            elif op == "abs":
                r = abs(a)
                lit = fmt_float(r, is32)
            else:
                r = nan if (a < 0 and a != 0) or is_nan(a) else rnd(a ** 0.5)
                if a == 0:  # sqrt(-0) = -0, sqrt(0) = 0
                    r = a
                lit = fmt_float(r, is32)
            asserts.append(
                f'(assert_return (invoke "{op}" {const(ty, fmt_float(a, is32))}) '
                f"{const(ty, lit)})")
            suite.count([f"{ty}.{op}", "local.get"])
    # negation of a NaN flips the sign bit without canonicalizing
    asserts.append(
        f'(assert_return (invoke "neg" {const(ty, "nan")}) {const(ty, "-nan")})')
    asserts.append(
        f'(assert_return (invoke "abs" {const(ty, "-nan")}) {const(ty, "nan")})')
    suite.count([f"{ty}.neg", f"{ty}.abs"])

    rel_cases = [(0.0, -0.0), (1.0, 2.0), (2.0, 1.0), (nan, nan),
                 (nan, 1.0), (-inf, inf), (3.5, 3.5)]
    rel_table = {
        "eq": lambda a, b: a == b,
        "ne": lambda a, b: a != b,
        "lt": lambda a, b: a < b,
        "gt": lambda a, b: a > b,
        "le": lambda a, b: a <= b,
        "ge": lambda a, b: a >= b,
    }
    for op, fn in rel_table.items():
        mod.append(
            f'  (func (export "{op}") (param {ty} {ty}) (result i32)\n'
            f"    local.get 0\n    local.get 1\n    {ty}.{op})")
        for a, b in rel_cases:
            a, b = rnd(a), rnd(b)
            r = 1 if fn(a, b) else 0
            asserts.append(
                f'(assert_return (invoke "{op}" {const(ty, fmt_float(a, is32))} '
                f"{const(ty, fmt_float(b, is32))}) (i32.const {r}))")
            suite.count([f"{ty}.{op}", "local.get"])

    mod.append(")")
    text = ";; Float operators, " + ty + ". Generated by tools/gen-suite.\n\n"
    text += "\n".join(mod) + "\n\n" + "\n".join(asserts) + "\n"
    suite.add(f"{ty}_ops.minwast", text)


def gen_const(suite):
    text = """;; Constants of each number type. Generated by tools/gen-suite.

(module
  (func (export "c-i32") (result i32) i32.const -7)
  (func (export "c-i32-max") (result i32) i32.const 0x7fffffff)
  (func (export "c-i32-zero") (result i32) i32.const 0)
  (func (export "c-i64") (result i64) i64.const -7)
  (func (export "c-i64-max") (result i64) i64.const 0x7fffffffffffffff)
  (func (export "c-i64-zero") (result i64) i64.const 0)
  (func (export "c-f32") (result f32) f32.const 0x1.8p+1)
  (func (export "c-f32-neg") (result f32) f32.const -0x1p-149)
  (func (export "c-f32-zero") (result f32) f32.const -0x0p+0)
  (func (export "c-f64") (result f64) f64.const 0x1.8p+1)
  (func (export "c-f64-neg") (result f64) f64.const -0x1p-1074)
  (func (export "c-f64-zero") (result f64) f64.const -0x0p+0))

(assert_return (invoke "c-i32") (i32.const -7))
(assert_return (invoke "c-i32-max") (i32.const 2147483647))
(assert_return (invoke "c-i32-zero") (i32.const 0))
(assert_return (invoke "c-i64") (i64.const -7))
(assert_return (invoke "c-i64-max") (i64.const 9223372036854775807))
(assert_return (invoke "c-i64-zero") (i64.const 0))
(assert_return (invoke "c-f32") (f32.const 3.0))
(assert_return (invoke "c-f32-neg") (f32.const -0x1p-149))
(assert_return (invoke "c-f32-zero") (f32.const -0.0))
(assert_return (invoke "c-f64") (f64.const 3.0))
(assert_return (invoke "c-f64-neg") (f64.const -0x1p-1074))
(assert_return (invoke "c-f64-zero") (f64.const -0.0))
"""
    suite.add("const.minwast", text)
    suite.count(["i32.const"], 3)
    suite.count(["i64.const"], 3)
    suite.count(["f32.const"], 3)
    suite.count(["f64.const"], 3)


def gen_parametric(suite):
    text = """;; nop, drop, select. Generated by tools/gen-suite.

(module
  (func (export "nop-value") (result i32)
    i32.const 41
    nop
    nop
    i32.const 1
    i32.add)
  (func (export "nop-empty")
    nop)
  (func (export "nop-block") (result i32)
    block (result i32) nop i32.const 9 nop end)
  (func (export "drop-one") (result i32)
    i32.const 1
    i32.const 2
    drop)
  (func (export "drop-f64") (result i32)
    f64.const 0x1p+0
    drop
    i32.const 5)
  (func (export "drop-many") (result i32)
    i32.const 1
    i64.const 2
    f32.const 3
    drop
    drop)
  (func (export "select-i32") (param i32) (result i32)
    i32.const 10
    i32.const 20
    local.get 0
    select)
  (func (export "select-i64") (param i32) (result i64)
    i64.const -1
    i64.const 1
    local.get 0
    select)
  (func (export "select-f64") (param i32) (result f64)
    f64.const 0x1p+0
    f64.const -0x1p+0
    local.get 0
    select))

(assert_return (invoke "nop-value") (i32.const 42))
(assert_return (invoke "nop-empty"))
(assert_return (invoke "nop-block") (i32.const 9))
(assert_return (invoke "drop-one") (i32.const 1))
(assert_return (invoke "drop-f64") (i32.const 5))
(assert_return (invoke "drop-many") (i32.const 1))
(assert_return (invoke "select-i32" (i32.const 1)) (i32.const 10))
(assert_return (invoke "select-i32" (i32.const 0)) (i32.const 20))
(assert_return (invoke "select-i32" (i32.const -5)) (i32.const 10))
(assert_return (invoke "select-i64" (i32.const 7)) (i64.const -1))
(assert_return (invoke "select-i64" (i32.const 0)) (i64.const 1))
(assert_return (invoke "select-f64" (i32.const 0)) (f64.const -0x1p+0))
"""
    suite.add("parametric.minwast", text)
    suite.count(["nop"], 3)
    suite.count(["drop"], 3)
    suite.count(["select"], 6)
    suite.count(["i32.const", "i64.const", "f32.const", "f64.const"], 1)


def gen_variables(suite):
    text = """;; Locals and globals. Generated by tools/gen-suite.

(module
  (global $base i32 (i32.const 100))
  (global $acc (mut i32) (i32.const 10))
  (global $g64 (mut i64) (i64.const -1))
  (func (export "param0") (param i32 i32) (result i32)
    local.get 0)
  (func (export "param1") (param i32 i32) (result i32)
    local.get 1)
  (func (export "local-zero-init") (result i64) (local i64)
    local.get 0)
  (func (export "set-then-get") (param i32) (result i32) (local i32)
    local.get 0
    local.set 1
    local.get 1)
  (func (export "set-swap") (param i32 i32) (result i32) (local i32)
    local.get 0
    local.set 2
    local.get 1
    local.set 0
    local.get 2
    local.set 1
    local.get 0
    local.get 1
    i32.sub)
  (func (export "tee-double") (param i32) (result i32) (local i32)
    local.get 0
    local.tee 1
    local.get 1
    i32.add)
  (func (export "tee-chain") (param i32) (result i32) (local i32 i32)
    local.get 0
    local.tee 1
    local.tee 2
    local.get 1
    local.get 2
    i32.add
    i32.add)
  (func (export "read-base") (result i32)
    global.get $base)
  (func (export "bump") (result i32)
    global.get $acc
    i32.const 1
    i32.add
    global.set $acc
    global.get $acc)
  (func (export "read-acc") (result i32)
    global.get $acc)
  (func (export "neg64") (result i64)
    global.get $g64
    i64.const -1
    i64.mul
    global.set $g64
    global.get $g64))

(assert_return (invoke "param0" (i32.const 3) (i32.const 4)) (i32.const 3))
(assert_return (invoke "param1" (i32.const 3) (i32.const 4)) (i32.const 4))
(assert_return (invoke "local-zero-init") (i64.const 0))
(assert_return (invoke "set-then-get" (i32.const 77)) (i32.const 77))
(assert_return (invoke "set-swap" (i32.const 9) (i32.const 4)) (i32.const -5))
(assert_return (invoke "tee-double" (i32.const 21)) (i32.const 42))
(assert_return (invoke "tee-double" (i32.const -3)) (i32.const -6))
(assert_return (invoke "tee-chain" (i32.const 5)) (i32.const 15))
(assert_return (invoke "read-base") (i32.const 100))
(assert_return (invoke "bump") (i32.const 11))
(assert_return (invoke "bump") (i32.const 12))
(assert_return (invoke "read-acc") (i32.const 12))
(assert_return (invoke "neg64") (i64.const 1))
(assert_return (invoke "neg64") (i64.const -1))
"""
    suite.add("variables.minwast", text)
    suite.count(["local.get"], 8)
    suite.count(["local.set"], 3)
    suite.count(["local.tee"], 4)
    suite.count(["global.get"], 5)
    suite.count(["global.set"], 3)


def gen_control(suite):
    text = """;; Control flow: block, loop, if, br, br_if, return, unreachable, call.
;; Generated by tools/gen-suite.

(module
  (func (export "block-value") (result i32)
    block (result i32) i32.const 7 end)
  (func (export "block-nested") (result i32)
    block (result i32)
      block (result i32) i32.const 1 br 1 end
      drop
      i32.const 2
    end)
  (func (export "block-deep") (result i32)
    block (result i32)
      block
        block
          br 1
        end
        i32.const 10
        br 1
      end
      i32.const 20
    end)
  (func (export "br-skips") (result i32)
    block (result i32)
      i32.const 3
      br 0
      unreachable
    end)
  (func (export "br-if-taken") (param i32) (result i32)
    block (result i32)
      i32.const 42
      local.get 0
      br_if 0
      drop
      i32.const 7
    end)
  (func (export "loop-once") (result i32)
    loop (result i32) i32.const 13 end)
  (func (export "loop-sum") (param i32) (result i32) (local i32 i32)
    loop
      local.get 1
      i32.const 1
      i32.add
      local.set 1
      local.get 2
      local.get 1
      i32.add
      local.set 2
      local.get 1
      local.get 0
      i32.lt_u
      br_if 0
    end
    local.get 2)
  (func (export "loop-countdown") (param i64) (result i64) (local i64)
    loop
      local.get 0
      i64.const 1
      i64.sub
      local.set 0
      local.get 1
      i64.const 2
      i64.add
      local.set 1
      local.get 0
      i64.const 0
      i64.gt_s
      br_if 0
    end
    local.get 1)
  (func (export "if-both") (param i32) (result i32)
    local.get 0
    if (result i32)
      i32.const 100
    else
      i32.const 200
    end)
  (func (export "if-no-else") (param i32) (result i32) (local i32)
    local.get 0
    if
      i32.const 99
      local.set 1
    end
    local.get 1)
  (func (export "if-nested") (param i32 i32) (result i32)
    local.get 0
    if (result i32)
      local.get 1
      if (result i32) i32.const 11 else i32.const 12 end
    else
      local.get 1
      if (result i32) i32.const 21 else i32.const 22 end
    end)
  (func (export "ret-const") (result i32)
    i32.const 3
    return)
  (func (export "ret-early") (result i32)
    i32.const 1
    return
    unreachable)
  (func (export "ret-nested") (param i32) (result i32)
    block
      block
        local.get 0
        br_if 0
        i32.const -1
        return
      end
      i32.const -2
      return
    end
    unreachable)
  (func (export "ret-none")
    return)
  (func (export "trap-now")
    unreachable)
  (func (export "trap-if") (param i32) (result i32)
    local.get 0
    if
      unreachable
    end
    i32.const 1)
  (func (export "trap-div") (param i32 i32) (result i32)
    local.get 0
    local.get 1
    i32.div_u)
  (func $add (param i32 i32) (result i32)
    local.get 0
    local.get 1
    i32.add)
  (func $twice (param i32) (result i32)
    local.get 0
    local.get 0
    call $add)
  (func (export "call-add") (param i32 i32) (result i32)
    local.get 0
    local.get 1
    call $add)
  (func (export "call-quad") (param i32) (result i32)
    local.get 0
    call $twice
    call $twice)
  (func (export "call-mixed") (param i32) (result i32)
    i32.const 5
    local.get 0
    call $add
    i32.const 2
    i32.mul)
  (func $rec-sum (param i32) (result i32)
    local.get 0
    i32.eqz
    if (result i32)
      i32.const 0
    else
      local.get 0
      i32.const 1
      i32.sub
      call $rec-sum
      local.get 0
      i32.add
    end)
  (func (export "rec-sum") (param i32) (result i32)
    local.get 0
    call $rec-sum))

(assert_return (invoke "block-value") (i32.const 7))
(assert_return (invoke "block-nested") (i32.const 1))
(assert_return (invoke "block-deep") (i32.const 20))
(assert_return (invoke "br-skips") (i32.const 3))
(assert_return (invoke "br-if-taken" (i32.const 1)) (i32.const 42))
(assert_return (invoke "br-if-taken" (i32.const 0)) (i32.const 7))
(assert_return (invoke "loop-once") (i32.const 13))
(assert_return (invoke "loop-sum" (i32.const 5)) (i32.const 15))
(assert_return (invoke "loop-sum" (i32.const 1)) (i32.const 1))
(assert_return (invoke "loop-sum" (i32.const 0)) (i32.const 1))
(assert_return (invoke "loop-countdown" (i64.const 5)) (i64.const 10))
(assert_return (invoke "loop-countdown" (i64.const 1)) (i64.const 2))
(assert_return (invoke "if-both" (i32.const 1)) (i32.const 100))
(assert_return (invoke "if-both" (i32.const 0)) (i32.const 200))
(assert_return (invoke "if-both" (i32.const -1)) (i32.const 100))
(assert_return (invoke "if-no-else" (i32.const 1)) (i32.const 99))
(assert_return (invoke "if-no-else" (i32.const 0)) (i32.const 0))
(assert_return (invoke "if-nested" (i32.const 1) (i32.const 0)) (i32.const 12))
(assert_return (invoke "if-nested" (i32.const 0) (i32.const 1)) (i32.const 21))
(assert_return (invoke "ret-const" ) (i32.const 3))
(assert_return (invoke "ret-early") (i32.const 1))
(assert_return (invoke "ret-nested" (i32.const 0)) (i32.const -1))
(assert_return (invoke "ret-nested" (i32.const 1)) (i32.const -2))
(assert_return (invoke "ret-none"))
(assert_trap (invoke "trap-now"))
(assert_return (invoke "trap-if" (i32.const 0)) (i32.const 1))
(assert_trap (invoke "trap-if" (i32.const 1)))
(assert_trap (invoke "trap-div" (i32.const 1) (i32.const 0)))
(assert_return (invoke "trap-div" (i32.const 8) (i32.const 2)) (i32.const 4))
(assert_return (invoke "call-add" (i32.const 7) (i32.const 35)) (i32.const 42))
(assert_return (invoke "call-quad" (i32.const 3)) (i32.const 12))
(assert_return (invoke "call-mixed" (i32.const 1)) (i32.const 12))
(assert_return (invoke "rec-sum" (i32.const 10)) (i32.const 55))
(assert_return (invoke "rec-sum" (i32.const 0)) (i32.const 0))
"""
    suite.add("control.minwast", text)
    suite.count(["block"], 6)
    suite.count(["loop"], 6)
    suite.count(["if"], 8)
    suite.count(["br"], 4)
    suite.count(["br_if"], 7)
    suite.count(["return"], 5)
    suite.count(["unreachable"], 3)
    suite.count(["call"], 7)


def main():
    suite = Suite()
    gen_const(suite)
    gen_int_ops(suite, 32)
    gen_int_ops(suite, 64)
    gen_float_ops(suite, 32)
    gen_float_ops(suite, 64)
    gen_parametric(suite)
    gen_variables(suite)
    gen_control(suite)
    suite.write()

    # every covered opcode needs >= 3 assertions including an edge case
    low = {op: n for op, n in suite.counts.items() if n < 3}
    if low:
        raise SystemExit(f"instances with fewer than 3 assertions: {low}")


if __name__ == "__main__":
    main()
