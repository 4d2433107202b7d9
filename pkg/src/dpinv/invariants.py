"""Generic matrices, characteristic coefficients and the invariant pairing.

Commutative polynomials live in a ring with the auxiliary determinant
parameters t_0, t_1, ... first and the matrix-entry variables x[s][i][j]
after them, ordered by (letter, row, column).  A monomial is packed into a
single int with a fixed-width bit field per variable, so monomial products
are plain integer additions; the widths are generous for desk scale.

The map from divided-power monomials to invariants reads a coefficient of
the parametric determinant det(t_0 I + sum_k t_k M_k): that single
polynomial is computed once per word tuple and every exponent pattern is
extracted from it.
"""

from __future__ import annotations

from .backend import poly_add_scaled, poly_mul
from .freering import Alphabet, FreePoly, Word, enumerate_necklaces, enumerate_words
from .gamma import ContextError, DPMonomial, GammaElement

_WIDTH = 16
_MASK = (1 << _WIDTH) - 1


class PolyRing:
    """Variable context: naux determinant parameters then the x[s][i][j]."""

    _cache: dict[tuple, "PolyRing"] = {}

    __slots__ = ("alphabet", "n", "naux", "names", "nvars")

    def __init__(self, alphabet: Alphabet, n: int, naux: int = 0):
        self.alphabet = alphabet
        self.n = n
        self.naux = naux
        names = [f"t{k}" for k in range(naux)]
        for s in alphabet.names:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    names.append(f"x[{s}][{i}][{j}]")
        self.names = tuple(names)
        self.nvars = len(names)

    @classmethod
    def get(cls, alphabet: Alphabet, n: int, naux: int = 0) -> "PolyRing":
        key = (alphabet.names, n, naux)
        ring = cls._cache.get(key)
        if ring is None:
            ring = cls._cache[key] = cls(alphabet, n, naux)
        return ring

    def x_index(self, s: int, i: int, j: int) -> int:
        """Variable index of x[letter s][i][j]; i, j are 1-based."""
        return self.naux + s * self.n * self.n + (i - 1) * self.n + (j - 1)

    def pack(self, exps) -> int:
        key = 0
        for idx, e in enumerate(exps):
            if e:
                if e >= (1 << _WIDTH):
                    raise OverflowError("exponent too large for the packing")
                key |= e << (_WIDTH * idx)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.nvars):
            out.append(key & _MASK)
            key >>= _WIDTH
        return tuple(out)

    def var(self, idx: int) -> "CommPoly":
        return CommPoly(self, {1 << (_WIDTH * idx): 1})

    def aux_split(self, key: int) -> tuple[int, int]:
        """Split a packed key into (aux part, x part re-based to naux=0)."""
        cut = _WIDTH * self.naux
        return key & ((1 << cut) - 1), key >> cut

    def x_ring(self) -> "PolyRing":
        return PolyRing.get(self.alphabet, self.n, 0)

    def grevlex_key(self, key: int):
        exps = self.unpack(key)
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def __repr__(self) -> str:
        return f"PolyRing(letters={''.join(self.alphabet.names)}, n={self.n}, naux={self.naux})"


class CommPoly:
    """Sparse commutative polynomial over the integers in a fixed ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[int, int] | None = None):
        self.ring = ring
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, ring: PolyRing) -> "CommPoly":
        return cls(ring)

    @classmethod
    def const(cls, ring: PolyRing, c: int) -> "CommPoly":
        return cls(ring, {0: c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "CommPoly":
        if isinstance(other, int):
            return CommPoly.const(self.ring, other)
        if other.ring is not self.ring:
            raise ValueError("mixed polynomial rings")
        return other

    def __add__(self, other) -> "CommPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        poly_add_scaled(out, other.terms, 1)
        res = CommPoly.__new__(CommPoly)
        res.ring, res.terms = self.ring, out
        return res

    __radd__ = __add__

    def __neg__(self) -> "CommPoly":
        res = CommPoly.__new__(CommPoly)
        res.ring = self.ring
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "CommPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        poly_add_scaled(out, other.terms, -1)
        res = CommPoly.__new__(CommPoly)
        res.ring, res.terms = self.ring, out
        return res

    def __rsub__(self, other) -> "CommPoly":
        return (-self) + other

    def __mul__(self, other) -> "CommPoly":
        if isinstance(other, int):
            res = CommPoly.__new__(CommPoly)
            res.ring = self.ring
            res.terms = {k: c * other for k, c in self.terms.items()} \
                if other else {}
            return res
        if other.ring is not self.ring:
            raise ValueError("mixed polynomial rings")
        res = CommPoly.__new__(CommPoly)
        res.ring = self.ring
        res.terms = poly_mul(self.terms, other.terms)
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CommPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = CommPoly.const(self.ring, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, CommPoly) and self.ring is other.ring
                and self.terms == other.terms)

    def total_degree(self) -> int:
        return max((sum(self.ring.unpack(k)) for k in self.terms), default=0)

    def sorted_keys(self) -> list[int]:
        return sorted(self.terms, key=self.ring.grevlex_key, reverse=True)

    def evaluate(self, values) -> int:
        """Specialize every variable to the given integers."""
        total = 0
        for k, c in self.terms.items():
            term = c
            for idx, e in enumerate(self.ring.unpack(k)):
                if e:
                    term *= values[idx] ** e
            total += term
        return total

    def coeff_vector(self, columns: dict[int, int], out=None) -> list[int]:
        """Coefficient row over a fixed monomial-to-column map."""
        row = out if out is not None else [0] * len(columns)
        for k, c in self.terms.items():
            row[columns[k]] = c
        return row

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for k in self.sorted_keys():
            c = self.terms[k]
            factors = []
            for idx, e in enumerate(ring.unpack(k)):
                if e == 1:
                    factors.append(ring.names[idx])
                elif e:
                    factors.append(f"{ring.names[idx]}^{e}")
            body = "*".join(factors)
            if not body:
                frag = str(abs(c))
            elif abs(c) == 1:
                frag = body
            else:
                frag = f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + frag)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"CommPoly({self.to_str()})"


class MatrixPoly:
    """Square matrix with CommPoly entries."""

    __slots__ = ("ring", "n", "entries")

    def __init__(self, ring: PolyRing, entries):
        self.ring = ring
        self.entries = [list(row) for row in entries]
        self.n = len(self.entries)
        for row in self.entries:
            if len(row) != self.n:
                raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, ring: PolyRing, n: int, scale: int = 1) -> "MatrixPoly":
        return cls(ring, [[CommPoly.const(ring, scale if i == j else 0)
                           for j in range(n)] for i in range(n)])

    def __add__(self, other: "MatrixPoly") -> "MatrixPoly":
        return MatrixPoly(self.ring,
                          [[a + b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatrixPoly") -> "MatrixPoly":
        return MatrixPoly(self.ring,
                          [[a - b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)])

    def __mul__(self, other) -> "MatrixPoly":
        if isinstance(other, (int, CommPoly)):
            return MatrixPoly(self.ring,
                              [[a * other for a in row]
                               for row in self.entries])
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc: dict[int, int] = {}
                for k in range(n):
                    poly_add_scaled(
                        acc,
                        poly_mul(self.entries[i][k].terms,
                                 other.entries[k][j].terms), 1)
                p = CommPoly.__new__(CommPoly)
                p.ring, p.terms = self.ring, acc
                row.append(p)
            rows.append(row)
        return MatrixPoly(self.ring, rows)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatrixPoly) and self.n == other.n
                and self.entries == other.entries)

    def trace(self) -> CommPoly:
        t = CommPoly.zero(self.ring)
        for i in range(self.n):
            t = t + self.entries[i][i]
        return t

    def evaluate(self, values) -> list[list[int]]:
        return [[a.evaluate(values) for a in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"MatrixPoly({self.n}x{self.n} over {self.ring!r})"


def _dot(u, v):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def _matvec(m, v):
    return [_dot(row, v) for row in m]


def berkowitz_charpoly(a) -> list:
    """Division-free characteristic polynomial (Berkowitz/Samuelson).

    Input is a square array over any commutative ring whose elements
    support +, -, * among themselves and with ints.  Returns c with
    det(tI - a) = sum_i c[i] t^(n-i), c[0] = 1.
    """
    n = len(a)
    if n == 0:
        return [1]
    c = [1, -a[0][0]]
    for r in range(1, n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        lead = [list(a[i][:r]) for i in range(r)]
        prods = [_dot(row, col)]
        v = col
        for _ in range(r - 1):
            v = _matvec(lead, v)
            prods.append(_dot(row, v))
        t = [1, -a[r][r]] + [-p for p in prods]
        new = []
        for i in range(r + 2):
            acc = None
            for j in range(max(0, i - len(t) + 1), min(i, r) + 1):
                term = t[i - j] * c[j]
                acc = term if acc is None else acc + term
            new.append(acc)
        c = new
    return c


def charpoly_coeffs(b: MatrixPoly | list) -> list:
    """Characteristic coefficients [e_0=1, e_1, ..., e_n].

    e_i is the i-th elementary symmetric function of the eigenvalues, read
    from det(tI - b) = sum_i (-1)^i e_i t^(n-i); e_1 is the trace and e_n
    the determinant.  Division-free, valid over the integers.
    """
    rows = b.entries if isinstance(b, MatrixPoly) else b
    c = berkowitz_charpoly(rows)
    return [coef if i % 2 == 0 else -coef for i, coef in enumerate(c)]


def det_cofactor(rows):
    """Determinant by first-row cofactor expansion (division-free)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_cofactor(sub)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


class MatrixInvariants:
    """Caches for one (alphabet, n): generic matrices, determinants, pi."""

    _instances: dict[tuple, "MatrixInvariants"] = {}

    def __init__(self, alphabet: Alphabet, n: int):
        if n < 1:
            raise ValueError("matrix order must be at least 1")
        self.alphabet = alphabet
        self.n = n
        self.ring = PolyRing.get(alphabet, n, 0)
        self._word_mats: dict[Word, MatrixPoly] = {}
        self._dets: dict[tuple, CommPoly] = {}
        self._pi: dict[DPMonomial, CommPoly] = {}

    @classmethod
    def get(cls, alphabet: Alphabet, n: int) -> "MatrixInvariants":
        key = (alphabet.names, n)
        inst = cls._instances.get(key)
        if inst is None:
            inst = cls._instances[key] = cls(alphabet, n)
        return inst

    def generic_matrix(self, s) -> MatrixPoly:
        """The generic matrix of the given letter (name or index)."""
        if isinstance(s, str):
            s = self.alphabet.index(s)
        if not 0 <= s < len(self.alphabet):
            raise KeyError(f"letter index {s} outside the alphabet")
        return self.word_matrix(Word((s,)))

    def word_matrix(self, w: Word) -> MatrixPoly:
        """Image of a word under j_n (the empty word gives the identity)."""
        w = Word(w)
        m = self._word_mats.get(w)
        if m is not None:
            return m
        n, ring = self.n, self.ring
        if len(w) == 0:
            m = MatrixPoly.identity(ring, n)
        elif len(w) == 1:
            m = MatrixPoly(ring, [[ring.var(ring.x_index(w[0], i, j))
                                   for j in range(1, n + 1)]
                                  for i in range(1, n + 1)])
        else:
            m = self.word_matrix(Word(w[:-1])) * self.word_matrix(Word(w[-1:]))
        self._word_mats[w] = m
        return m

    def jn_eval(self, f: FreePoly) -> MatrixPoly:
        """The ring homomorphism sending each letter to its generic matrix."""
        acc = MatrixPoly.identity(self.ring, self.n, 0)
        for w, c in f.terms.items():
            acc = acc + self.word_matrix(w) * c
        return acc

    def _parametric_det(self, mats) -> tuple[CommPoly, PolyRing]:
        """det(t_0 I + sum_k t_{k+1} mats[k]) in the matching aux ring."""
        naux = len(mats) + 1
        aux_ring = PolyRing.get(self.alphabet, self.n, naux)
        shift = _WIDTH * naux
        b = MatrixPoly.identity(aux_ring, self.n) * aux_ring.var(0)
        for k, mk in enumerate(mats):
            lifted = MatrixPoly(aux_ring,
                                [[CommPoly(aux_ring,
                                           {key << shift: c
                                            for key, c in p.terms.items()})
                                  for p in row] for row in mk.entries])
            b = b + lifted * aux_ring.var(k + 1)
        return det_cofactor(b.entries), aux_ring

    def _multidet(self, words: tuple[Word, ...]) -> CommPoly:
        """The parametric determinant of a word tuple, cached."""
        det = self._dets.get(words)
        if det is None:
            det, _ = self._parametric_det([self.word_matrix(w)
                                           for w in words])
            self._dets[words] = det
        return det

    def multidet_coeff(self, mats, exponents) -> CommPoly:
        """Coefficient of t_0^(n-|alpha|) prod_k t_k^(alpha_k) in the
        parametric determinant of the given matrices.

        Exponent patterns of total weight above n extract zero (the
        determinant is homogeneous of degree n in the parameters).
        """
        exponents = tuple(exponents)
        if len(mats) != len(exponents):
            raise ValueError("one exponent per matrix")
        if any(m.ring is not self.ring for m in mats):
            raise ValueError("matrices must live in this context's ring")
        weight = sum(exponents)
        if weight > self.n:
            return CommPoly.zero(self.ring)
        det, aux_ring = self._parametric_det(mats)
        return self._extract(det, aux_ring,
                             (self.n - weight,) + exponents)

    def _extract(self, det: CommPoly, aux_ring: PolyRing,
                 aux_exps: tuple[int, ...]) -> CommPoly:
        target = aux_ring.pack(aux_exps + (0,) * (aux_ring.nvars - len(aux_exps)))
        out: dict[int, int] = {}
        for key, c in det.terms.items():
            aux, xpart = aux_ring.aux_split(key)
            if aux == target:
                out[xpart] = c
        return CommPoly(self.ring, out)

    def pi_monomial(self, m: DPMonomial) -> CommPoly:
        """Image of a standard-basis monomial under the invariant pairing."""
        cached = self._pi.get(m)
        if cached is not None:
            return cached
        weight = m.weight
        if weight > self.n:
            res = CommPoly.zero(self.ring)
        else:
            words = tuple(w for w, _ in m.factors)
            exps = tuple(e for _, e in m.factors)
            det = self._multidet(words)
            aux_ring = PolyRing.get(self.alphabet, self.n, len(words) + 1)
            res = self._extract(det, aux_ring, (self.n - weight,) + exps)
        self._pi[m] = res
        return res

    def pi_n_eval(self, g: GammaElement) -> CommPoly:
        """Evaluate on a level-n element, extended linearly."""
        if g.level != self.n:
            raise ContextError(
                f"element lives at level {g.level!r}, expected {self.n}")
        acc: dict[int, int] = {}
        for m, c in g.terms.items():
            poly_add_scaled(acc, self.pi_monomial(m).terms, c)
        return CommPoly(self.ring, acc)

    def e_poly(self, w: Word, i: int) -> CommPoly:
        """e_i of the word's generic-matrix image."""
        if i == 0:
            return CommPoly.const(self.ring, 1)
        return self.pi_monomial(DPMonomial.single(Word(w), i))

    def invariant_span(self, d: tuple[int, ...]) -> list[CommPoly]:
        """Spanning set of the multidegree-d slice of the invariant ring:
        all products of e_i over necklace representatives."""
        nletters = len(self.alphabet)
        if len(d) != nletters:
            raise ValueError("multidegree length must match the alphabet")
        if all(x == 0 for x in d):
            return [CommPoly.const(self.ring, 1)]
        cands: list[tuple[Word, int, tuple[int, ...]]] = []
        for nec in enumerate_necklaces(nletters, max_multidegree=d):
            wd = nec.rep.multidegree(nletters)
            for i in range(1, self.n + 1):
                scaled = tuple(i * x for x in wd)
                if all(a <= b for a, b in zip(scaled, d)):
                    cands.append((nec.rep, i, scaled))
        out: list[CommPoly] = []
        seen: set[tuple] = set()

        def emit(p: CommPoly) -> None:
            key = tuple(sorted(p.terms.items()))
            if key not in seen:
                seen.add(key)
                out.append(p)

        def rec(idx: int, rem: tuple[int, ...], acc: CommPoly) -> None:
            if all(x == 0 for x in rem):
                emit(acc)
                return
            if idx == len(cands):
                return
            rec(idx + 1, rem, acc)
            w, i, scaled = cands[idx]
            cur = acc
            left = rem
            while all(a <= b for a, b in zip(scaled, left)):
                cur = cur * self.e_poly(w, i)
                left = tuple(b - a for a, b in zip(scaled, left))
                rec(idx + 1, left, cur)

        rec(0, d, CommPoly.const(self.ring, 1))
        return out

    def covariant_span(self, d: tuple[int, ...]) -> list[MatrixPoly]:
        """Spanning set of the multidegree-d covariants: invariant products
        times word monomials in the generic matrices."""
        nletters = len(self.alphabet)
        words: list[Word] = [Word()]
        if any(d):
            words += enumerate_words(nletters, max_multidegree=d)
        out: list[MatrixPoly] = []
        for u in words:
            rem = tuple(b - a for a, b in
                        zip(u.multidegree(nletters), d))
            if any(x < 0 for x in rem):
                continue
            mat = self.word_matrix(u)
            for inv in self.invariant_span(rem):
                out.append(mat * inv)
        return out


def generic_matrix(s, n: int, alphabet: Alphabet) -> MatrixPoly:
    return MatrixInvariants.get(alphabet, n).generic_matrix(s)


def jn_eval(f: FreePoly, n: int, alphabet: Alphabet) -> MatrixPoly:
    return MatrixInvariants.get(alphabet, n).jn_eval(f)


def pi_n_eval(g: GammaElement, n: int, alphabet: Alphabet) -> CommPoly:
    return MatrixInvariants.get(alphabet, n).pi_n_eval(g)


def multidet_coeff(mats, exponents, n: int, alphabet: Alphabet) -> CommPoly:
    return MatrixInvariants.get(alphabet, n).multidet_coeff(mats, exponents)


def invariant_span(n: int, d: tuple[int, ...], alphabet: Alphabet) -> list[CommPoly]:
    return MatrixInvariants.get(alphabet, n).invariant_span(d)


def covariant_span(n: int, d: tuple[int, ...], alphabet: Alphabet) -> list[MatrixPoly]:
    return MatrixInvariants.get(alphabet, n).covariant_span(d)
