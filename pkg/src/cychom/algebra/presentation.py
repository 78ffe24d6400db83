"""Presentations of (skew-)commutative graded algebras on a finite basis.

A presentation stores an explicit basis of a weight-truncated algebra with
structure constants, multi-weights, parities and an optional square-zero
degree -1 differential.  Free skew-commutative algebras keep monomials as
exponent tuples and multiply by exponent arithmetic with Koszul signs; the
paper-specific quotient algebras carry small explicit tables.

Window semantics: a product whose weight leaves the window is truncated to
zero and the offending pair is recorded, so downstream homology can refuse
to trust slices that touched a truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    weight: tuple[int, ...]

    @property
    def parity(self) -> int:
        return self.degree % 2


def _add_weights(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _in_window(w, window):
    return all(lo <= x <= hi for x, (lo, hi) in zip(w, window))


class GradedAlgebraPresentation:
    def __init__(self, kind, names, degrees, weights, unit_index, window,
                 weight_arity, gens=None, recipe=None):
        self.kind = kind                  # 'free' | 'table'
        self.names = list(names)
        self.degrees = list(degrees)
        self.weights = [tuple(w) for w in weights]
        self.parities = [d % 2 for d in self.degrees]
        self.unit = unit_index
        self.window = tuple(tuple(w) for w in window)
        self.weight_arity = weight_arity
        self.gens = gens                  # list[GeneratorSpec] for free algebras
        self.recipe = recipe              # used by the DSL printer
        self.exps = None                  # free algebras: exponent tuples
        self.exp_index = None
        self.table = None                 # table algebras: {(i,j): {k: c}}
        self.differential = None          # {i: {k: c}} or None
        self.truncated_pairs: set[tuple[int, int]] = set()
        self._prod_cache: dict[tuple[int, int], dict[int, Fraction]] = {}
        self.module = None                # optional ModuleSpec attachment

    # -- queries ---------------------------------------------------------

    def dim(self):
        return len(self.names)

    def index_of(self, name):
        return self.names.index(name)

    def weight_of(self, i):
        return self.weights[i]

    def is_free(self):
        return self.kind == "free"

    def basis_in_weight(self, w):
        w = tuple(w)
        return [i for i in range(self.dim()) if self.weights[i] == w]

    def boundary_flags(self):
        """Basis elements known to touch the window boundary (some product
        with a nonunit element truncates)."""
        flagged = set()
        n = self.dim()
        for i in range(n):
            for j in range(n):
                if j == self.unit or i == self.unit:
                    continue
                self.product(i, j)
                if (min(i, j), max(i, j)) in self.truncated_pairs:
                    flagged.add(i)
                    flagged.add(j)
        return flagged

    # -- multiplication --------------------------------------------------

    def product(self, i, j) -> dict[int, Fraction]:
        key = (i, j)
        cached = self._prod_cache.get(key)
        if cached is not None:
            return cached
        if self.kind == "free":
            out = self._free_product(i, j)
        else:
            out = self.table.get(key, {})
        self._prod_cache[key] = out
        return out

    def _free_product(self, i, j):
        ei = self.exps[i]
        ej = self.exps[j]
        sign = 0
        for a, fa in enumerate(ej):
            if not fa or not self.gens[a].parity:
                continue
            tail = sum(ei[b] * self.gens[b].parity for b in range(a + 1, len(ei)))
            sign += fa * tail
        combined = tuple(x + y for x, y in zip(ei, ej))
        for a, g in enumerate(self.gens):
            if g.parity and combined[a] > 1:
                return {}
        w = _add_weights(self.weights[i], self.weights[j])
        if not _in_window(w, self.window):
            self.truncated_pairs.add((min(i, j), max(i, j)))
            return {}
        k = self.exp_index.get(combined)
        if k is None:
            # weight is inside the window but the monomial was not
            # enumerated: treat like a truncation rather than fail silently
            self.truncated_pairs.add((min(i, j), max(i, j)))
            return {}
        return {k: Fraction(-1 if sign % 2 else 1)}

    def multiply(self, comb1: dict[int, Fraction], comb2: dict[int, Fraction]):
        out: dict[int, Fraction] = {}
        for i, c1 in comb1.items():
            for j, c2 in comb2.items():
                for k, c in self.product(i, j).items():
                    s = out.get(k, Fraction(0)) + c1 * c2 * c
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def apply_differential(self, i) -> dict[int, Fraction]:
        if self.differential is None:
            return {}
        return self.differential.get(i, {})

    # -- pretty ----------------------------------------------------------

    def monomial_name(self, i):
        return self.names[i]

    def __repr__(self):
        return f"<algebra {self.recipe or self.kind} dim={self.dim()}>"


@dataclass
class ModuleSpec:
    """A module over a presentation: basis labels with weights plus the
    action of algebra basis elements as sparse combinations."""
    names: list
    weights: list
    action: dict  # (algebra index, module index) -> {module index: Fraction}


# -- constructors ----------------------------------------------------------


def _norm_window(window, arity):
    if isinstance(window, int):
        return tuple((0, window) for _ in range(arity))
    window = tuple(tuple(w) for w in window)
    if len(window) != arity:
        raise ValueError(f"window arity {len(window)} != weight arity {arity}")
    return window


def free_skew_algebra(gens, window, allow_negative_degree=False,
                      differential_rules=None, recipe=None):
    """Basis of admissible monomials of a free skew-commutative algebra.

    Odd generators are structurally capped at exponent 1.  Every generator
    must either be odd or have a positive weight in some coordinate, so that
    weight slices stay finite.
    """
    gens = list(gens)
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise ValueError("duplicate generator names")
    arity = len(gens[0].weight) if gens else (len(window) if not isinstance(window, int) else 1)
    for g in gens:
        if len(g.weight) != arity:
            raise ValueError("inconsistent weight arity across generators")
        if g.degree < 0 and not allow_negative_degree:
            raise ValueError(f"negative-degree generator {g.name}")
        if any(w < 0 for w in g.weight):
            raise ValueError(f"negative weight on generator {g.name}")
    window = _norm_window(window, arity)
    caps = []
    for g in gens:
        if g.parity:
            caps.append(1)
            continue
        bounds = [hi // w for w, (lo, hi) in zip(g.weight, window) if w > 0]
        if not bounds:
            raise ValueError(
                f"even generator {g.name} has no positive weight coordinate; "
                "weight slices would be infinite")
        caps.append(min(bounds))

    exps = []

    def rec(idx, cur, w):
        if idx == len(gens):
            exps.append(tuple(cur))
            return
        g = gens[idx]
        for e in range(caps[idx] + 1):
            ww = tuple(a + e * b for a, b in zip(w, g.weight))
            if not all(x <= hi for x, (lo, hi) in zip(ww, window)):
                break
            cur.append(e)
            rec(idx + 1, cur, ww)
            cur.pop()

    rec(0, [], tuple(0 for _ in range(arity)))

    def mono_weight(e):
        w = [0] * arity
        for a, g in enumerate(gens):
            for k in range(arity):
                w[k] += e[a] * g.weight[k]
        return tuple(w)

    def mono_degree(e):
        return sum(e[a] * g.degree for a, g in enumerate(gens))

    exps.sort(key=lambda e: (mono_weight(e), e))

    def mono_name(e):
        bits = []
        for a, g in enumerate(gens):
            if e[a] == 1:
                bits.append(g.name)
            elif e[a] > 1:
                bits.append(f"{g.name}^{e[a]}")
        return "*".join(bits) if bits else "1"

    pres = GradedAlgebraPresentation(
        kind="free",
        names=[mono_name(e) for e in exps],
        degrees=[mono_degree(e) for e in exps],
        weights=[mono_weight(e) for e in exps],
        unit_index=exps.index(tuple(0 for _ in gens)),
        window=window,
        weight_arity=arity,
        gens=gens,
        recipe=recipe or ("free", tuple(gens)),
    )
    pres.exps = exps
    pres.exp_index = {e: i for i, e in enumerate(exps)}
    if differential_rules:
        attach_differential(pres, differential_rules)
    return pres


def attach_differential(pres, rules):
    """Attach a degree -1 derivation given on generators.

    `rules` maps generator name -> sparse combination over basis indices (or a
    {exponent tuple: coeff} mapping).  The derivation is extended to every
    basis monomial by the graded Leibniz rule and must preserve weight.
    """
    if not pres.is_free():
        raise ValueError("differentials only attach to free presentations")
    gen_images: dict[int, dict[int, Fraction]] = {}
    name_to_pos = {g.name: a for a, g in enumerate(pres.gens)}
    for name, img in rules.items():
        if name not in name_to_pos:
            raise ValueError(f"delta rule for unknown generator {name}")
        a = name_to_pos[name]
        img = {k: Fraction(v) for k, v in img.items() if v}
        g = pres.gens[a]
        for k in img:
            if pres.degrees[k] != g.degree - 1:
                raise ValueError(f"delta image of {name} not of degree {g.degree - 1}")
            if pres.weights[k] != g.weight:
                raise ValueError(f"delta rule for {name} violates weight homogeneity")
        gen_images[a] = img

    diff: dict[int, dict[int, Fraction]] = {}
    for i, e in enumerate(pres.exps):
        out: dict[int, Fraction] = {}
        prefix_parity = 0
        for a, g in enumerate(pres.gens):
            ea = e[a]
            if ea and a in gen_images:
                # term: (-1)^|prefix| * prefix * delta(g_a) * g_a^(e-1) * suffix,
                # assembled as delta(g_a) * rest; commuting delta(g_a) back past
                # the prefix leaves the net sign (-1)^(|prefix| * parity(g_a))
                reduced = list(e)
                reduced[a] -= 1
                rest_idx = pres.exp_index[tuple(reduced)]
                sgn = Fraction(-1 if (prefix_parity * g.parity) % 2 else 1) * ea
                for k, c in gen_images[a].items():
                    term = pres.multiply({k: sgn * c}, {rest_idx: Fraction(1)})
                    for kk, cc in term.items():
                        s = out.get(kk, Fraction(0)) + cc
                        if s:
                            out[kk] = s
                        else:
                            out.pop(kk, None)
            prefix_parity += ea * g.parity
        if out:
            diff[i] = out
    pres.differential = diff
    pres.gen_differential = {pres.gens[a].name: img for a, img in gen_images.items()}


def quotient_truncated_poly(m, recipe=None):
    """C[x]/(x^m): m-dimensional, exact structure constants, x-weight grading."""
    if m < 1:
        raise ValueError("quotient exponent must be >= 1")
    names = ["1"] + [f"x^{a}" if a > 1 else "x" for a in range(1, m)]
    pres = GradedAlgebraPresentation(
        kind="table",
        names=names,
        degrees=[0] * m,
        weights=[(a,) for a in range(m)],
        unit_index=0,
        window=((0, m - 1),),
        weight_arity=1,
        recipe=recipe or ("quot", m),
    )
    table = {}
    for a in range(m):
        for b in range(m):
            if a + b < m:
                table[(a, b)] = {a + b: Fraction(1)}
            else:
                table[(a, b)] = {}
    pres.table = table
    return pres


def square_zero_extension(d_plus, d_minus):
    """C[x] (+) M with M = C[x, 1/x]/C[x]: x.x^-1 = 0 and M.M = 0.

    Basis x^a for 0 <= a <= d_plus and x^-b for 1 <= b <= d_minus; only the
    positive side is window-truncated.
    """
    if d_minus < 1:
        raise ValueError("negative window bound must be >= 1")
    if d_plus < 1:
        raise ValueError("positive window bound must be >= 1")
    idx = {}
    names = []
    weights = []
    for a in range(d_plus + 1):
        idx[a] = len(names)
        names.append("1" if a == 0 else (f"x^{a}" if a > 1 else "x"))
        weights.append((a,))
    for b in range(1, d_minus + 1):
        idx[-b] = len(names)
        names.append(f"x^-{b}")
        weights.append((-b,))
    pres = GradedAlgebraPresentation(
        kind="table",
        names=names,
        degrees=[0] * len(names),
        weights=weights,
        unit_index=idx[0],
        window=((-d_minus, d_plus),),
        weight_arity=1,
        recipe=("sqzero", d_plus, d_minus),
    )
    table = {}
    for wa, ia in idx.items():
        for wb, ib in idx.items():
            if wa < 0 and wb < 0:
                table[(ia, ib)] = {}          # M * M = 0
                continue
            w = wa + wb
            if wa < 0 or wb < 0:
                # module action: lands in M or dies on crossing into C[x]
                if w <= -1:
                    table[(ia, ib)] = {idx[w]: Fraction(1)}
                else:
                    table[(ia, ib)] = {}      # x * x^-1 = 0 and beyond
            else:
                if w <= d_plus:
                    table[(ia, ib)] = {idx[w]: Fraction(1)}
                else:
                    table[(ia, ib)] = {}
                    pres.truncated_pairs.add((min(ia, ib), max(ia, ib)))
    pres.table = table
    mod_names = [names[idx[-b]] for b in range(1, d_minus + 1)]
    action = {}
    for a in range(d_plus + 1):
        for b in range(1, d_minus + 1):
            tgt = a - b
            if tgt <= -1:
                action[(idx[a], b - 1)] = {(-tgt) - 1: Fraction(1)}
            else:
                action[(idx[a], b - 1)] = {}
    pres.module = ModuleSpec(names=mod_names,
                             weights=[(-b,) for b in range(1, d_minus + 1)],
                             action=action)
    return pres


def crossing_lines(total_bound):
    """C[x, y]/(xy): basis 1, x^a, y^b with bi-weight grading, xy = 0."""
    names = ["1"]
    weights = [(0, 0)]
    idx = {(0, 0): 0}
    for a in range(1, total_bound + 1):
        idx[(a, 0)] = len(names)
        names.append(f"x^{a}" if a > 1 else "x")
        weights.append((a, 0))
    for b in range(1, total_bound + 1):
        idx[(0, b)] = len(names)
        names.append(f"y^{b}" if b > 1 else "y")
        weights.append((0, b))
    pres = GradedAlgebraPresentation(
        kind="table",
        names=names,
        degrees=[0] * len(names),
        weights=weights,
        unit_index=0,
        window=((0, total_bound), (0, total_bound)),
        weight_arity=2,
        recipe=("cross", total_bound),
    )
    table = {}
    for wa, ia in idx.items():
        for wb, ib in idx.items():
            if (wa[0] and wb[1]) or (wa[1] and wb[0]):
                table[(ia, ib)] = {}        # contains xy = 0
                continue
            w = (wa[0] + wb[0], wa[1] + wb[1])
            if w in idx:
                table[(ia, ib)] = {idx[w]: Fraction(1)}
            else:
                table[(ia, ib)] = {}
                pres.truncated_pairs.add((min(ia, ib), max(ia, ib)))
    pres.table = table
    return pres


def laurent_window(bound, pad=1):
    """Window of C[x, 1/x]: basis x^j for |j| <= bound * pad.

    `pad` leaves exact multiplication headroom: products are exact whenever
    |i + j| <= bound * pad, so consumers that only combine elements with
    |j| <= bound * pad / 2 never see a truncation.
    """
    b = bound * pad
    names = []
    weights = []
    idx = {}
    for j in range(-b, b + 1):
        idx[j] = len(names)
        if j == 0:
            names.append("1")
        elif j == 1:
            names.append("x")
        else:
            names.append(f"x^{j}")
        weights.append((j,))
    pres = GradedAlgebraPresentation(
        kind="table",
        names=names,
        degrees=[0] * len(names),
        weights=weights,
        unit_index=idx[0],
        window=((-b, b),),
        weight_arity=1,
        recipe=("laurent", bound, pad),
    )
    table = {}
    for i in range(-b, b + 1):
        for j in range(-b, b + 1):
            if abs(i + j) <= b:
                table[(idx[i], idx[j])] = {idx[i + j]: Fraction(1)}
            else:
                table[(idx[i], idx[j])] = {}
                pres.truncated_pairs.add((min(idx[i], idx[j]), max(idx[i], idx[j])))
    pres.table = table
    return pres


def resolution_dga(m, weight_bound):
    """Free DGA (C[x, xi], delta xi = x^m) resolving C[x]/(x^m)."""
    if m < 1:
        raise ValueError("exponent must be >= 1")
    gens = [GeneratorSpec("x", 0, (1,)), GeneratorSpec("xi", 1, (m,))]
    pres = free_skew_algebra(gens, ((0, weight_bound),),
                             recipe=("free", tuple(gens), (("xi", f"x^{m}"),)))
    xm = pres.exp_index.get((m, 0))
    if xm is None:
        raise ValueError("weight bound too small to hold x^m")
    attach_differential(pres, {"xi": {xm: Fraction(1)}})
    return pres


# -- validation ------------------------------------------------------------


@dataclass
class Violation:
    kind: str
    where: tuple
    detail: str


class ValidationReport:
    def __init__(self):
        self.violations: list[Violation] = []

    def ok(self):
        return not self.violations

    def add(self, kind, where, detail):
        self.violations.append(Violation(kind, tuple(where), detail))

    def __repr__(self):
        if self.ok():
            return "<all axioms pass>"
        return "<violations: " + "; ".join(
            f"{v.kind}@{v.where}: {v.detail}" for v in self.violations) + ">"


def check_presentation(pres: GradedAlgebraPresentation) -> ValidationReport:
    """Verify graded commutativity, associativity (on untruncated triples),
    unit behaviour, weight additivity, delta^2 = 0 and the Leibniz rule."""
    rep = ValidationReport()
    n = pres.dim()
    unit = pres.unit

    for i in range(n):
        got = pres.product(unit, i)
        if got != {i: Fraction(1)}:
            rep.add("unit", (i,), f"1*{pres.names[i]} != {pres.names[i]}")
        got = pres.product(i, unit)
        if got != {i: Fraction(1)}:
            rep.add("unit", (i,), f"{pres.names[i]}*1 != {pres.names[i]}")

    def truncated(i, j):
        return (min(i, j), max(i, j)) in pres.truncated_pairs

    for i in range(n):
        for j in range(i, n):
            ab = pres.product(i, j)
            ba = pres.product(j, i)
            if truncated(i, j):
                continue
            sign = -1 if (pres.parities[i] and pres.parities[j]) else 1
            want = {k: sign * c for k, c in ba.items()}
            if ab != want:
                rep.add("commutativity", (i, j),
                        f"{pres.names[i]}*{pres.names[j]} breaks Koszul symmetry")
            for k in ab:
                if pres.weights[k] != _add_weights(pres.weights[i], pres.weights[j]):
                    rep.add("weight", (i, j), "product weight mismatch")

    for i in range(n):
        for j in range(n):
            ij = pres.product(i, j)
            if truncated(i, j):
                continue
            for k in range(n):
                jk = pres.product(j, k)
                if truncated(j, k):
                    continue
                skip = False
                for t in ij:
                    if truncated(t, k):
                        skip = True
                for t in jk:
                    if truncated(i, t):
                        skip = True
                if skip:
                    continue
                left = pres.multiply(ij, {k: Fraction(1)})
                right = pres.multiply({i: Fraction(1)}, jk)
                if left != right:
                    rep.add("associativity", (i, j, k),
                            f"({pres.names[i]}*{pres.names[j]})*{pres.names[k]} != assoc")

    if pres.differential is not None:
        for i in range(n):
            dd: dict[int, Fraction] = {}
            for k, c in pres.apply_differential(i).items():
                for kk, cc in pres.apply_differential(k).items():
                    s = dd.get(kk, Fraction(0)) + c * cc
                    if s:
                        dd[kk] = s
                    else:
                        dd.pop(kk, None)
            if dd:
                rep.add("delta_squared", (i,), f"delta^2({pres.names[i]}) != 0")
            for k in pres.apply_differential(i):
                if pres.weights[k] != pres.weights[i]:
                    rep.add("delta_weight", (i,), "delta does not preserve weight")
                if pres.degrees[k] != pres.degrees[i] - 1:
                    rep.add("delta_degree", (i,), "delta is not of degree -1")
        for i in range(n):
            for j in range(n):
                if truncated(i, j):
                    continue
                prod = pres.product(i, j)
                d_prod: dict[int, Fraction] = {}
                for k, c in prod.items():
                    for kk, cc in pres.apply_differential(k).items():
                        s = d_prod.get(kk, Fraction(0)) + c * cc
                        if s:
                            d_prod[kk] = s
                        else:
                            d_prod.pop(kk, None)
                lhs: dict[int, Fraction] = {}
                for k, c in pres.apply_differential(i).items():
                    for kk, cc in pres.product(k, j).items():
                        s = lhs.get(kk, Fraction(0)) + c * cc
                        if s:
                            lhs[kk] = s
                        else:
                            lhs.pop(kk, None)
                sgn = Fraction(-1 if pres.parities[i] else 1)
                for k, c in pres.apply_differential(j).items():
                    for kk, cc in pres.product(i, k).items():
                        s = lhs.get(kk, Fraction(0)) + sgn * c * cc
                        if s:
                            lhs[kk] = s
                        else:
                            lhs.pop(kk, None)
                if lhs != d_prod:
                    rep.add("leibniz", (i, j),
                            f"delta({pres.names[i]}*{pres.names[j]}) breaks Leibniz")
    return rep
