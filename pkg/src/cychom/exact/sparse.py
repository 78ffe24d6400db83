"""Exact sparse linear algebra over the rationals.

Everything here is fraction-free: rows are cleared to integers once, and
elimination uses cross-multiplication followed by a gcd content strip, so no
intermediate value is ever rounded.  Pivots are chosen by Markowitz count to
keep fill-in down; ties break deterministically so repeated runs produce the
same kernels and witnesses.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class SparseMatQ:
    """Sparse matrix over Q, stored as {(row, col): Fraction} with no zeros."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimensions")
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), v in entries.items() if isinstance(entries, dict) else entries:
                self.add_entry(r, c, v)

    def add_entry(self, r, c, v):
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
        v = Fraction(v)
        key = (r, c)
        cur = self.entries.get(key)
        if cur is not None:
            v = cur + v
        if v:
            self.entries[key] = v
        elif cur is not None:
            del self.entries[key]

    @classmethod
    def from_dense(cls, rows):
        m = cls(len(rows), len(rows[0]) if rows else 0)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    m.add_entry(i, j, v)
        return m

    def to_dense(self):
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self):
        t = SparseMatQ(self.ncols, self.nrows)
        t.entries = {(c, r): v for (r, c), v in self.entries.items()}
        return t

    def mul_vec(self, vec):
        """Apply to a sparse vector {col: Fraction}; returns {row: Fraction}."""
        out: dict[int, Fraction] = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x:
                s = out.get(r, Fraction(0)) + v * x
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out

    def matmul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matmul")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = SparseMatQ(self.nrows, other.ncols)
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                acc[key] = acc.get(key, Fraction(0)) + v * v2
        out.entries = {k: v for k, v in acc.items() if v}
        return out

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, SparseMatQ) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatQ({self.nrows}x{self.ncols}, nnz={len(self.entries)})"


def _integer_rows(m):
    """Rows as {col: int} dicts plus the positive scale s_i with
    int_row_i == s_i * original_row_i."""
    rows: list[dict[int, int]] = [dict() for _ in range(m.nrows)]
    scales = [Fraction(1)] * m.nrows
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    for i, row in enumerate(rows):
        if not row:
            continue
        denlcm = 1
        for v in row.values():
            d = v.denominator
            denlcm = denlcm // gcd(denlcm, d) * d
        ints = {c: int(v * denlcm) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        else:
            g = 1
        rows[i] = ints
        scales[i] = Fraction(denlcm, g)
    return rows, scales


def _strip_content(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class _Elimination:
    """Forward elimination state shared by rank / kernel / solve."""

    def __init__(self, m, track_combos=False):
        self.ncols = m.ncols
        self.nrows = m.nrows
        self.rows, scales = _integer_rows(m)
        # combos[i] expresses working row i as a rational combination of the
        # original rows of m; only maintained when certificates are requested.
        self.combos = None
        if track_combos:
            self.combos = [{i: scales[i]} for i in range(m.nrows)]
        self.col_count: dict[int, int] = {}
        for row in self.rows:
            for c in row:
                self.col_count[c] = self.col_count.get(c, 0) + 1
        self.active = set(i for i in range(m.nrows) if self.rows[i])
        self.pivot_rows: list[int] = []   # in elimination order
        self.pivot_cols: list[int] = []
        self.run()

    def _pick_pivot(self):
        # partial Markowitz: sparsest active row, then its sparsest column,
        # with small-magnitude and index tie-breaks for determinism.
        if not self.active:
            return None
        pr = min(self.active, key=lambda i: (len(self.rows[i]), i))
        row = self.rows[pr]
        pc = min(row, key=lambda c: (self.col_count[c], abs(row[c]).bit_length(), c))
        return (pr, pc)

    def run(self):
        while self.active:
            picked = self._pick_pivot()
            if picked is None:
                break
            pr, pc = picked
            prow = self.rows[pr]
            pval = prow[pc]
            self.active.discard(pr)
            for c in prow:
                self.col_count[c] -= 1
            self.pivot_rows.append(pr)
            self.pivot_cols.append(pc)
            for i in sorted(self.active):
                row = self.rows[i]
                a = row.get(pc)
                if a is None:
                    continue
                for c in row:
                    self.col_count[c] -= 1
                new = {}
                for c in row.keys() | prow.keys():
                    w = pval * row.get(c, 0) - a * prow.get(c, 0)
                    if w:
                        new[c] = w
                new = _strip_content(new)
                if self.combos is not None:
                    comb = self.combos[i]
                    pcomb = self.combos[pr]
                    # mirror the (unstripped) row operation, then rescale to
                    # match the content strip exactly
                    scale = self._rescale(row, new, pval, a, prow)
                    merged: dict[int, Fraction] = {}
                    for k, v in comb.items():
                        merged[k] = v * pval * scale
                    for k, v in pcomb.items():
                        s = merged.get(k, Fraction(0)) - v * a * scale
                        if s:
                            merged[k] = s
                        else:
                            merged.pop(k, None)
                    self.combos[i] = merged
                self.rows[i] = new
                if new:
                    for c in new:
                        self.col_count[c] = self.col_count.get(c, 0) + 1
                else:
                    self.active.discard(i)

    @staticmethod
    def _rescale(old_row, new_row, pval, a, prow):
        """Fraction by which the stripped row differs from p*row - a*prow."""
        for c, v in sorted(new_row.items()):
            raw = pval * old_row.get(c, 0) - a * prow.get(c, 0)
            return Fraction(v, raw)
        return Fraction(1)

    @property
    def rank(self):
        return len(self.pivot_rows)

    def kernel_basis(self):
        """Exact kernel vectors, one per free column, as {col: Fraction}."""
        pivot_col_set = set(self.pivot_cols)
        free_cols = [c for c in range(self.ncols) if c not in pivot_col_set]
        basis = []
        for f in free_cols:
            vec: dict[int, Fraction] = {f: Fraction(1)}
            for idx in range(len(self.pivot_rows) - 1, -1, -1):
                row = self.rows[self.pivot_rows[idx]]
                pc = self.pivot_cols[idx]
                s = Fraction(0)
                for c, v in row.items():
                    if c == pc:
                        continue
                    x = vec.get(c)
                    if x:
                        s += v * x
                if s:
                    vec[pc] = -s / row[pc]
            # normalize to integer entries with content 1, first entry > 0
            denlcm = 1
            for v in vec.values():
                denlcm = denlcm // gcd(denlcm, v.denominator) * v.denominator
            ints = {c: int(v * denlcm) for c, v in vec.items()}
            g = 0
            for v in ints.values():
                g = gcd(g, v)
            if g > 1:
                ints = {c: v // g for c, v in ints.items()}
            lead = min(ints)
            if ints[lead] < 0:
                ints = {c: -v for c, v in ints.items()}
            basis.append({c: Fraction(v) for c, v in sorted(ints.items())})
        return basis


def rank(m: SparseMatQ) -> int:
    return _Elimination(m).rank


def rank_kernel(m: SparseMatQ):
    """Rank and an exact kernel basis; rank + len(kernel) == ncols."""
    e = _Elimination(m)
    return e.rank, e.kernel_basis()


class MembershipResult:
    """Outcome of an image-membership test.

    Either `witness` solves m*x = v exactly, or `certificate` is a left kernel
    vector y with y*m = 0 and y*v != 0.
    """

    __slots__ = ("is_in_image", "witness", "certificate")

    def __init__(self, is_in_image, witness=None, certificate=None):
        self.is_in_image = is_in_image
        self.witness = witness
        self.certificate = certificate


def solve_membership(m: SparseMatQ, v) -> MembershipResult:
    """Decide whether v (a {row: Fraction} dict or list) is in the column image."""
    if isinstance(v, (list, tuple)):
        if len(v) != m.nrows:
            raise ValueError("vector length does not match row count")
        vdict = {i: Fraction(x) for i, x in enumerate(v) if x}
    else:
        vdict = {}
        for i, x in v.items():
            if not (0 <= i < m.nrows):
                raise ValueError("vector index out of range")
            if x:
                vdict[i] = Fraction(x)

    e = _Elimination(m, track_combos=True)
    # reduce v by the recorded row operations: residual_i = (combo_i).v
    # working row i of the eliminated matrix equals combos[i] * M, so the
    # consistency condition is: rows reduced to zero must also kill v.
    for i in range(m.nrows):
        if not e.rows[i] and e.combos[i]:
            resid = Fraction(0)
            for k, coef in e.combos[i].items():
                x = vdict.get(k)
                if x:
                    resid += coef * x
            if resid:
                return MembershipResult(False, certificate=dict(e.combos[i]))
    # all-zero rows are consistent; back-substitute on pivot rows.
    rhs = {}
    for idx, pr in enumerate(e.pivot_rows):
        s = Fraction(0)
        for k, coef in e.combos[pr].items():
            x = vdict.get(k)
            if x:
                s += coef * x
        rhs[idx] = s
    x: dict[int, Fraction] = {}
    for idx in range(len(e.pivot_rows) - 1, -1, -1):
        row = e.rows[e.pivot_rows[idx]]
        pc = e.pivot_cols[idx]
        s = rhs[idx]
        for c, vv in row.items():
            if c == pc:
                continue
            xv = x.get(c)
            if xv:
                s -= vv * xv
        if s:
            x[pc] = s / row[pc]
    # handle rows of v not touched by any original row (zero matrix rows)
    check = m.mul_vec(x)
    if check != vdict:
        # v has support outside the row space reachable by elimination
        # (possible when m has empty rows); certify with a unit vector.
        for i in vdict:
            if all(r != i for (r, _c) in m.entries):
                return MembershipResult(False, certificate={i: Fraction(1)})
        raise AssertionError("inconsistent membership solve")
    return MembershipResult(True, witness=x)
