"""De Rham complexes of free DGAs and Adams-bigraded cyclic homology.

The de Rham complex of a free skew-commutative (A, delta) adds one generator
d(x) of degree deg(x) - 1 per generator; the total differential d + delta has
(d + delta)^2 = 0, raises the total degree (form degree minus algebra degree)
by one and preserves every weight.  The (n, i) entry of the homology table is
the cohomology of the form-degree <= i truncation in total degree 2i - n,
sliced by weight.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra.presentation import (
    GeneratorSpec,
    GradedAlgebraPresentation,
    free_skew_algebra,
    resolution_dga,
)
from .exact import SparseMatQ, rank, rank_kernel


def _derivation_table(pres, gen_images):
    """Extend an odd derivation given on generators to all basis monomials."""
    diff: dict[int, dict[int, Fraction]] = {}
    for i, e in enumerate(pres.exps):
        out: dict[int, Fraction] = {}
        prefix_parity = 0
        for a, g in enumerate(pres.gens):
            ea = e[a]
            if ea and a in gen_images and gen_images[a]:
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
    return diff


def _compose(table1, table2, dim):
    """Sparse composition table2 o table1 on basis indices."""
    out = {}
    for i in range(dim):
        acc: dict[int, Fraction] = {}
        for k, c in table1.get(i, {}).items():
            for kk, cc in table2.get(k, {}).items():
                s = acc.get(kk, Fraction(0)) + c * cc
                if s:
                    acc[kk] = s
                else:
                    acc.pop(kk, None)
        if acc:
            out[i] = acc
    return out


class DeRhamComplex:
    """Free presentation enlarged by form generators, with d and delta."""

    def __init__(self, base: GradedAlgebraPresentation, window):
        if not base.is_free():
            raise ValueError("de Rham complex needs a free presentation; "
                             "resolve the quotient first")
        self.base = base
        gens = list(base.gens)
        n = len(gens)
        ext = gens + [GeneratorSpec(f"d{g.name}", g.degree - 1, g.weight) for g in gens]
        self.pres = free_skew_algebra(ext, window, allow_negative_degree=True,
                                      recipe=("derham", base.recipe))
        # d: x_i -> dx_i, dx_i -> 0
        d_rules = {}
        for a in range(n):
            target = [0] * (2 * n)
            target[n + a] = 1
            d_rules[a] = {self.pres.exp_index[tuple(target)]: Fraction(1)}
        self.d_table = _derivation_table(self.pres, d_rules)

        # delta: imported from the base, then delta(dx_i) = -d(delta(x_i))
        self.delta_table = {}
        if base.differential is not None:
            delta_rules = {}
            for a in range(n):
                img = base.gen_differential.get(gens[a].name) if hasattr(base, "gen_differential") else None
                if not img:
                    continue
                lifted = {}
                for k, c in img.items():
                    ext_exp = tuple(list(base.exps[k]) + [0] * n)
                    lifted[self.pres.exp_index[ext_exp]] = c
                delta_rules[a] = lifted
            for a in range(n):
                if a in delta_rules:
                    img = delta_rules[a]
                    d_img: dict[int, Fraction] = {}
                    for k, c in img.items():
                        for kk, cc in self.d_table.get(k, {}).items():
                            s = d_img.get(kk, Fraction(0)) + c * cc
                            if s:
                                d_img[kk] = s
                            else:
                                d_img.pop(kk, None)
                    delta_rules[n + a] = {k: -c for k, c in d_img.items()}
            self.delta_table = _derivation_table(self.pres, delta_rules)

        dim = self.pres.dim()
        self.form_degree = []
        self.algebra_degree = []
        for e in self.pres.exps:
            self.form_degree.append(sum(e[n + a] for a in range(n)))
            self.algebra_degree.append(sum((e[a] + e[n + a]) * gens[a].degree
                                           for a in range(n)))
        self.total_degree = [f - a for f, a in zip(self.form_degree, self.algebra_degree)]
        self._check_squares()

    def _check_squares(self):
        dim = self.pres.dim()
        dd = _compose(self.d_table, self.d_table, dim)
        if dd:
            raise AssertionError("d^2 != 0 on the de Rham complex")
        if self.delta_table:
            ss = _compose(self.delta_table, self.delta_table, dim)
            if ss:
                raise AssertionError("delta^2 != 0 on the de Rham complex")
            anti = {}
            a1 = _compose(self.d_table, self.delta_table, dim)
            a2 = _compose(self.delta_table, self.d_table, dim)
            for i in set(a1) | set(a2):
                acc = dict(a1.get(i, {}))
                for k, c in a2.get(i, {}).items():
                    s = acc.get(k, Fraction(0)) + c
                    if s:
                        acc[k] = s
                    else:
                        acc.pop(k, None)
                if acc:
                    anti[i] = acc
            if anti:
                raise AssertionError("d delta + delta d != 0 on the de Rham complex")

    def total_differential(self, i):
        out = dict(self.d_table.get(i, {}))
        for k, c in self.delta_table.get(i, {}) .items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def truncated_slice_bases(self, i_trunc, weight):
        """Bases of the form-degree <= i_trunc part at a weight, by total degree."""
        weight = tuple(weight)
        by_total: dict[int, list[int]] = {}
        for b in range(self.pres.dim()):
            if self.form_degree[b] <= i_trunc and self.pres.weights[b] == weight:
                by_total.setdefault(self.total_degree[b], []).append(b)
        return by_total

    def truncated_matrices(self, i_trunc, weight):
        """(bases, matrices) with matrices[t]: slice t -> slice t+1."""
        bases = self.truncated_slice_bases(i_trunc, weight)
        index = {}
        for t, lst in bases.items():
            for pos, b in enumerate(lst):
                index[b] = (t, pos)
        mats: dict[int, SparseMatQ] = {}
        for t, lst in sorted(bases.items()):
            tgt = bases.get(t + 1, [])
            m = SparseMatQ(len(tgt), len(lst))
            for c, b in enumerate(lst):
                for k, coef in self.total_differential(b).items():
                    if self.form_degree[k] > i_trunc:
                        continue
                    loc = index.get(k)
                    if loc is None:
                        continue
                    tt, r = loc
                    if tt != t + 1:
                        raise AssertionError("total differential is not of degree +1")
                    m.add_entry(r, c, coef)
            mats[t] = m
        # (d + delta)^2 = 0 as matrices, on every consecutive pair
        for t in mats:
            nxt = mats.get(t + 1)
            if nxt is not None and not nxt.matmul(mats[t]).is_zero():
                raise AssertionError("(d + delta)^2 != 0 on a truncated slice")
        return bases, mats


def de_rham(pres, window) -> DeRhamComplex:
    return DeRhamComplex(pres, window)


class HCTable:
    """Entries (n, i, weight) -> dimension with per-entry trust flags."""

    def __init__(self, algebra_label, window):
        self.algebra = algebra_label
        self.window = window
        self.entries: dict[tuple[int, int, tuple], int] = {}
        self.trusted: dict[tuple[int, int, tuple], bool] = {}

    def set(self, n, i, weight, dim, trusted=True):
        key = (n, i, tuple(weight))
        self.entries[key] = dim
        self.trusted[key] = trusted

    def get(self, n, i, weight):
        return self.entries.get((n, i, tuple(weight)), 0)

    def is_trusted(self, n, i, weight):
        return self.trusted.get((n, i, tuple(weight)), False)

    def nonzero(self):
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def to_json(self):
        return {
            "schema": 1,
            "algebra": self.algebra,
            "window": list(self.window) if self.window is not None else None,
            "entries": [
                {"n": n, "i": i, "weight": list(w), "dim": self.entries[(n, i, w)],
                 "trusted": self.trusted[(n, i, w)]}
                for (n, i, w) in sorted(self.entries)
            ],
        }


def _weights_up_to(arity, weight_max):
    if arity == 0:
        return [()]
    out = [()]
    for _ in range(arity):
        out = [w + (x,) for w in out for x in range(weight_max + 1)]
    return out


def cyclic_homology(pres, i_max, n_max, weight_max, label=None) -> HCTable:
    """HC_n^(i) per weight for a free (possibly differential) presentation.

    Quotient algebras must be resolved first (resolve_quotient); out-of-range
    (n, i) cells are reported as explicit zeros.
    """
    arity = pres.weight_arity
    window = tuple((0, weight_max) for _ in range(arity))
    cx = de_rham(pres, window)
    table = HCTable(label or str(pres.recipe), window)
    for i in range(i_max + 1):
        for w in _weights_up_to(arity, weight_max):
            bases, mats = cx.truncated_matrices(i, w)
            ranks = {t: rank(m) for t, m in mats.items()}
            for n in range(n_max + 1):
                t = 2 * i - n
                dim_t = len(bases.get(t, []))
                if dim_t == 0:
                    table.set(n, i, w, 0)
                    continue
                r_out = ranks.get(t, 0)
                r_in = ranks.get(t - 1, 0)
                table.set(n, i, w, dim_t - r_out - r_in)
    return table


def resolve_quotient(m, weight_bound):
    """Free DGA (x even weight 1; xi odd weight m; delta xi = x^m)."""
    return resolution_dga(m, weight_bound)


def delta_homology_dims(pres, degree_max, weight_max):
    """Homology of (A, delta) by (algebra degree, weight); sanity check that a
    resolution really resolves its quotient."""
    out = {}
    arity = pres.weight_arity
    for w in _weights_up_to(arity, weight_max):
        by_deg: dict[int, list[int]] = {}
        for b in range(pres.dim()):
            if pres.weights[b] == tuple(w):
                by_deg.setdefault(pres.degrees[b], []).append(b)
        index = {}
        for d, lst in by_deg.items():
            for pos, b in enumerate(lst):
                index[b] = (d, pos)
        mats = {}
        for d, lst in by_deg.items():
            tgt = by_deg.get(d - 1, [])
            mm = SparseMatQ(len(tgt), len(lst))
            for c, b in enumerate(lst):
                for k, coef in pres.apply_differential(b).items():
                    dd, r = index[k]
                    assert dd == d - 1
                    mm.add_entry(r, c, coef)
            mats[d] = mm
        for d in range(degree_max + 1):
            dim_d = len(by_deg.get(d, []))
            if dim_d == 0:
                out[(d, w)] = 0
                continue
            r_out = rank(mats[d]) if d in mats else 0
            r_in = rank(mats[d + 1]) if (d + 1) in mats else 0
            out[(d, w)] = dim_d - r_out - r_in
    return out


def _cohomology_representatives(bases, mats, t):
    """Kernel vectors of D_t that are independent modulo the image of D_(t-1)."""
    dim_t = len(bases.get(t, []))
    if dim_t == 0:
        return []
    d_out = mats.get(t, SparseMatQ(0, dim_t))
    _r, kernel = rank_kernel(d_out)
    d_in = mats.get(t - 1)
    reps = []
    cols: list[dict[int, Fraction]] = []
    base_rank = 0
    if d_in is not None:
        by_col: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in d_in.entries.items():
            by_col.setdefault(c, {})[r] = v
        cols = [by_col[c] for c in sorted(by_col)]
        base_rank = _rank_of_cols(cols, dim_t)
    cur_rank = base_rank
    for vec in kernel:
        trial = cols + [vec]
        r = _rank_of_cols(trial, dim_t)
        if r > cur_rank:
            cols = trial
            cur_rank = r
            reps.append(vec)
    return reps


def _rank_of_cols(cols, nrows):
    m = SparseMatQ(nrows, len(cols))
    for c, col in enumerate(cols):
        for r, v in col.items():
            m.add_entry(r, c, v)
    return rank(m)


def periodicity_rank(pres, i, n, weight_max):
    """Rank of HC_n^(i) -> HC_(n-2)^(i-1) induced by dropping top form degree,
    reported per weight."""
    if i < 1:
        raise ValueError("periodicity map needs i >= 1")
    arity = pres.weight_arity
    window = tuple((0, weight_max) for _ in range(arity))
    cx = de_rham(pres, window)
    t = 2 * i - n
    out = {}
    for w in _weights_up_to(arity, weight_max):
        bases_src, mats_src = cx.truncated_matrices(i, w)
        reps = _cohomology_representatives(bases_src, mats_src, t)
        bases_tgt, mats_tgt = cx.truncated_matrices(i - 1, w)
        tgt_list = bases_tgt.get(t, [])
        tgt_pos = {b: p for p, b in enumerate(tgt_list)}
        if not tgt_list:
            out[w] = 0
            continue
        src_list = bases_src.get(t, [])
        projected = []
        for vec in reps:
            pv = {}
            for c, v in vec.items():
                b = src_list[c]
                p = tgt_pos.get(b)
                if p is not None:
                    pv[p] = v
            projected.append(pv)
        d_in = mats_tgt.get(t - 1)
        cols = []
        if d_in is not None:
            by_col: dict[int, dict[int, Fraction]] = {}
            for (r, c), v in d_in.entries.items():
                by_col.setdefault(c, {})[r] = v
            cols = [by_col[c] for c in sorted(by_col)]
        base_rank = _rank_of_cols(cols, len(tgt_list))
        total_rank = _rank_of_cols(cols + projected, len(tgt_list))
        out[w] = total_rank - base_rank
    return out
