"""Tiny text DSL naming the algebra presentations the CLI can build.

Grammar (statements separated by ";"):

    free <gen>[, <gen>...]      gen = NAME [":" ("even"|"odd")] [":" "w" "=" INT ("," INT)*]
    quot NAME "^" INT
    cross
    sqzero "D+" "=" INT "D-" "=" INT
    laurent INT
    d NAME "=" [COEF] FACTOR*   factor = NAME ["^" INT]

Multiple `free` statements accumulate generators; `d` statements attach the
differential.  Parse errors carry position and the expected token set.
"""

from __future__ import annotations

from fractions import Fraction

from .presentation import (
    GeneratorSpec,
    attach_differential,
    crossing_lines,
    free_skew_algebra,
    laurent_window,
    quotient_truncated_poly,
    square_zero_extension,
)


class DslError(ValueError):
    def __init__(self, message, line, col, expected=None):
        self.line = line
        self.col = col
        self.expected = sorted(expected) if expected else []
        exp = f" (expected one of: {', '.join(self.expected)})" if expected else ""
        super().__init__(f"{message} at line {line}, column {col}{exp}")


_PUNCT = (";", ":", "=", "^", ",", "+", "-", "/", "*")
_KEYWORDS = ("free", "quot", "cross", "sqzero", "laurent", "d", "even", "odd", "w")


class _Lexer:
    def __init__(self, text):
        self.tokens = []
        line, col = 1, 1
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if ch.isspace():
                col += 1
                i += 1
                continue
            if text.startswith("D+", i) or text.startswith("D-", i):
                self.tokens.append((text[i:i + 2], text[i:i + 2], line, col))
                i += 2
                col += 2
                continue
            if ch in _PUNCT:
                self.tokens.append((ch, ch, line, col))
                i += 1
                col += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("INT", int(text[i:j]), line, col))
                col += j - i
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                word = text[i:j]
                kind = word if word in _KEYWORDS else "NAME"
                self.tokens.append((kind, word, line, col))
                col += j - i
                i = j
                continue
            raise DslError(f"unexpected character {ch!r}", line, col)
        self.tokens.append(("EOF", None, line, col))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, *kinds):
        tok = self.peek()
        if tok[0] not in kinds:
            raise DslError(f"unexpected token {tok[1]!r}", tok[2], tok[3], expected=kinds)
        return self.next()


def _parse_gen(lx, arity_seen):
    name_tok = lx.expect("NAME", "d", "w")   # allow d/w as generator names
    name = name_tok[1]
    parity = "even"
    weight = None
    while lx.peek()[0] == ":":
        lx.next()
        tok = lx.expect("even", "odd", "w")
        if tok[0] in ("even", "odd"):
            parity = tok[0]
        else:
            lx.expect("=")
            ints = [lx.expect("INT")[1]]
            while lx.peek()[0] == ",":
                save = lx.pos
                lx.next()
                if lx.peek()[0] == "INT":
                    ints.append(lx.next()[1])
                else:
                    lx.pos = save
                    break
            weight = tuple(ints)
    if weight is None:
        weight = (1,) if arity_seen is None else tuple(1 for _ in range(arity_seen))
    return name, parity, weight


def _parse_monomial(lx, gen_names):
    coef = Fraction(1)
    if lx.peek()[0] == "-":
        lx.next()
        coef = -coef
    if lx.peek()[0] == "INT":
        coef *= lx.next()[1]
        if lx.peek()[0] == "/":
            lx.next()
            coef /= lx.expect("INT")[1]
    factors = []
    while lx.peek()[0] in ("NAME", "d", "w"):
        tok = lx.next()
        name = tok[1]
        if name not in gen_names:
            raise DslError(f"unknown generator {name!r} in d rule", tok[2], tok[3])
        exp = 1
        if lx.peek()[0] == "^":
            lx.next()
            exp = lx.expect("INT")[1]
        factors.append((name, exp))
    if not factors and coef == 1:
        tok = lx.peek()
        raise DslError("empty monomial in d rule", tok[2], tok[3],
                       expected=("NAME", "INT"))
    return coef, factors


def parse_algebra_spec(text, weight_bound=6):
    """Build a presentation from DSL text.

    `weight_bound` is the per-coordinate window cap used by constructions that
    need one (free, cross, laurent); quotient algebras are exact and ignore it.
    """
    lx = _Lexer(text)
    gens: list[tuple] = []
    d_rules: list[tuple] = []
    result = None

    while lx.peek()[0] != "EOF":
        kind = lx.peek()[0]
        if kind == "NAME" and gens:
            tok = ("free",)    # bare generator statement continuing a `free`
        else:
            tok = lx.expect("free", "quot", "cross", "sqzero", "laurent", "d", ";")
        if tok[0] == ";":
            continue
        if tok[0] == "free":
            arity = len(gens[0][2]) if gens else None
            gens.append(_parse_gen(lx, arity))
            while lx.peek()[0] == ",":
                lx.next()
                arity = len(gens[0][2])
                gens.append(_parse_gen(lx, arity))
        elif tok[0] == "quot":
            lx.expect("NAME")
            lx.expect("^")
            m = lx.expect("INT")[1]
            result = ("quot", m)
        elif tok[0] == "cross":
            result = ("cross",)
        elif tok[0] == "sqzero":
            lx.expect("D+")
            lx.expect("=")
            dp = lx.expect("INT")[1]
            lx.expect("D-")
            lx.expect("=")
            dm = lx.expect("INT")[1]
            result = ("sqzero", dp, dm)
        elif tok[0] == "laurent":
            w = lx.expect("INT")[1]
            result = ("laurent", w)
        elif tok[0] == "d":
            name_tok = lx.expect("NAME", "w")
            lx.expect("=")
            coef, factors = _parse_monomial(lx, {g[0] for g in gens})
            d_rules.append((name_tok[1], coef, factors, name_tok[2], name_tok[3]))
        if lx.peek()[0] == ";":
            lx.next()
        elif lx.peek()[0] != "EOF":
            bad = lx.peek()
            raise DslError(f"unexpected token {bad[1]!r}", bad[2], bad[3], expected=(";",))

    if result is not None and gens:
        tok = lx.peek()
        raise DslError("cannot mix free generators with a quotient construction",
                       tok[2], tok[3])
    if result is not None:
        kind = result[0]
        if kind == "quot":
            return quotient_truncated_poly(result[1])
        if kind == "cross":
            return crossing_lines(weight_bound)
        if kind == "sqzero":
            return square_zero_extension(result[1], result[2])
        if kind == "laurent":
            return laurent_window(result[1])
    if not gens:
        return free_skew_algebra([], ((0, 0),))

    arity = len(gens[0][2])
    specs = []
    for name, parity, weight in gens:
        if len(weight) != arity:
            raise DslError(f"generator {name} has weight arity {len(weight)}, expected {arity}", 1, 1)
        specs.append(GeneratorSpec(name, 1 if parity == "odd" else 0, weight))
    window = tuple((0, weight_bound) for _ in range(arity))
    pres = free_skew_algebra(specs, window)

    if d_rules:
        rules = {}
        for name, coef, factors, line, col in d_rules:
            if name not in {g.name for g in specs}:
                raise DslError(f"d rule for unknown generator {name!r}", line, col)
            exp = [0] * len(specs)
            order = {g.name: i for i, g in enumerate(specs)}
            for fname, fexp in factors:
                exp[order[fname]] += fexp
            idx = pres.exp_index.get(tuple(exp))
            if idx is None:
                raise DslError(f"d rule image for {name} outside the window", line, col)
            rules.setdefault(name, {})
            rules[name][idx] = rules[name].get(idx, Fraction(0)) + coef
        try:
            attach_differential(pres, rules)
        except ValueError as exc:
            raise DslError(str(exc), 1, 1) from exc
    return pres


def pretty_print(pres) -> str:
    """Canonical DSL text for a presentation built by the constructors."""
    recipe = pres.recipe
    if recipe is None:
        raise ValueError("presentation has no printable recipe")
    kind = recipe[0]
    if kind == "quot":
        return f"quot x^{recipe[1]}"
    if kind == "cross":
        return "cross"
    if kind == "sqzero":
        return f"sqzero D+={recipe[1]} D-={recipe[2]}"
    if kind == "laurent":
        return f"laurent {recipe[1]}"
    if kind == "free":
        gens = recipe[1]
        bits = []
        for g in gens:
            parity = "odd" if g.degree % 2 else "even"
            w = ",".join(str(x) for x in g.weight)
            bits.append(f"free {g.name}:{parity}:w={w}")
        if getattr(pres, "gen_differential", None):
            order = {g.name: i for i, g in enumerate(pres.gens)}
            for name in sorted(pres.gen_differential, key=lambda n: order[n]):
                img = pres.gen_differential[name]
                terms = []
                for idx in sorted(img):
                    coef = img[idx]
                    mono = pres.names[idx].replace("*", " ")
                    if coef == 1:
                        terms.append(mono)
                    else:
                        terms.append(f"{coef} {mono}")
                bits.append(f"d {name} = " + " + ".join(terms))
        return "; ".join(bits)
    raise ValueError(f"unknown recipe {recipe!r}")
