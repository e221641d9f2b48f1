"""Finitely presented graded-commutative rings with exact quotient arithmetic.

A :class:`GradedRing` is given by generators with even degrees and
homogeneous relation polynomials, modelling rings such as::

    Z[t, w] / (t^9 - 3*t*w^2,  w^3 - 9*t^8*w + 15*t^4*w^2)

Arithmetic in a fixed degree d is integer linear algebra: list the degree-d
monomials, assemble the matrix of all monomial multiples of the relations
landing in degree d, and take its cokernel.  Smith normal form yields rank
and torsion, Hermite normal form yields a canonical coset representative
for every class, and a basis of the degree-d group is chosen greedily from
the monomials themselves (largest in graded-lex order first), extended by
explicit lattice vectors in the rare degrees where no set of monomials
forms a Z-basis.

Coefficients may be the integers ("Z"), the rationals ("Q"), or a prime
field (an int p); the rational and mod-p cases replace the lattice
computations by ordinary Gaussian elimination.

Graded pieces are computed lazily and memoised per ring.  Recomputation is
idempotent and entries are only ever added, so concurrent readers need no
coordination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import intlinalg as la
from .poly import DegreeError, Polynomial, VariableContext


class RingError(ValueError):
    pass


class RelationNotPreservedError(RingError):
    def __init__(self, relation, residual):
        super().__init__(
            f"relation {relation} maps to nonzero class {residual}"
        )
        self.relation = relation
        self.residual = residual


class NoPreimageError(RingError):
    pass


class AmbiguousUmkehrError(RingError):
    pass


class PairingEntryError(RingError):
    pass


class PresentationSolveError(RingError):
    pass


# ---------------------------------------------------------------------------
# field helpers (rationals and prime fields)


def _rref_q(rows):
    """Reduced row echelon form over the rationals; returns (rows, pivot cols)."""
    rows = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _rref_p(rows, p):
    rows = [[v % p for v in r] for r in rows]
    pivots = []
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def _invert_q(M):
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    red, pivots = _rref_q(aug)
    if pivots[:n] != list(range(n)):
        raise RingError("matrix not invertible over Q")
    return [row[n:] for row in red]


def _invert_p(M, p):
    n = len(M)
    aug = [[M[i][j] % p for j in range(n)] + [int(i == j) for j in range(n)]
           for i in range(n)]
    red, pivots = _rref_p(aug, p)
    if pivots[:n] != list(range(n)):
        raise RingError(f"matrix not invertible mod {p}")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# graded pieces


@dataclass(frozen=True)
class GradedPieceBasis:
    """Basis data for one graded piece of a presented ring."""

    degree: int
    rank: int
    torsion: tuple
    representatives: tuple  # tuple of Polynomial
    _piece: object = field(repr=False, compare=False, default=None)

    def coordinates(self, p: Polynomial):
        """Coordinates of a degree-homogeneous class over the representatives."""
        return self._piece.coordinates(p)

    def torsion_coordinates(self, p: Polynomial):
        return self._piece.torsion_coordinates(p)


class _Piece:
    """Internal per-degree data shared by the public operations."""

    def __init__(self, ring, degree):
        self.ring = ring
        self.degree = degree
        self.mons = ring.context.monomials_of_degree(degree)  # grlex descending
        self._index = {m: i for i, m in enumerate(self.mons)}
        n = len(self.mons)
        self.n = n
        rel_rows = self._relation_rows()
        if ring.coefficients == "Z":
            self._init_integer(rel_rows)
        else:
            self._init_field(rel_rows)
        reps = []
        for spec in self._rep_specs:
            reps.append(Polynomial(ring.context, spec))
        self.representatives = tuple(reps)

    # -- construction ---------------------------------------------------

    def _relation_rows(self):
        rows = []
        ctx = self.ring.context
        for rel in self.ring.relations:
            e = rel.homogeneous_degree()
            if e > self.degree:
                continue
            for mu in ctx.monomials_of_degree(self.degree - e):
                vec = [0] * self.n
                for mon, c in rel.items():
                    shifted = tuple(a + b for a, b in zip(mon, mu))
                    vec[self._index[shifted]] = c
                rows.append(vec)
        return rows

    def _init_integer(self, rel_rows):
        n = self.n
        k = len(rel_rows)
        if k:
            B = la.transpose(rel_rows)  # n x k, columns span the relation lattice
            D, U, _ = la.smith_normal_form(B)
            diag = [D[i][i] for i in range(min(n, k))]
            r = sum(1 for d in diag if d)
            self._torsion = tuple(d for d in diag if d > 1)
            H, _ = la.hermite_normal_form(rel_rows)
            self._hnf_rows = H
            self._hnf_pivots = la.hnf_pivots(H)
        else:
            U = la.identity(n)
            diag, r = [], 0
            self._torsion = ()
            self._hnf_rows = []
            self._hnf_pivots = []
        self.rank = n - r
        self._torsion_rows = [
            (U[i], diag[i]) for i in range(r) if diag[i] > 1
        ]
        self._u_free = [U[i] for i in range(r, n)]
        # choose basis representatives: monomials first, largest first
        chosen_rows = []
        chosen_mons = []
        for j, mon in enumerate(self.mons):
            if len(chosen_rows) == self.rank:
                break
            cand = [row[j] for row in self._u_free]
            if la.is_primitive(chosen_rows + [cand]):
                chosen_rows.append(cand)
                chosen_mons.append(mon)
        rep_specs = [{m: 1} for m in chosen_mons]
        if len(chosen_rows) < self.rank:
            extra = la.complete_to_unimodular(chosen_rows, self.rank)
            for row in extra:
                coeffs = la.solve_integer(self._u_free, row)
                rep_specs.append(
                    {self.mons[j]: coeffs[j] for j in range(self.n) if coeffs[j]}
                )
                chosen_rows.append(row)
        self._rep_specs = rep_specs
        if self.rank:
            rinv = la._unimodular_inverse(chosen_rows)
            self._coord_matrix = la.transpose(rinv)  # coords = matrix * zfree
        else:
            self._coord_matrix = []

    def _init_field(self, rel_rows):
        ring = self.ring
        self._torsion = ()
        if ring.coefficients == "Q":
            red, pivots = _rref_q(rel_rows)
        else:
            red, pivots = _rref_p(rel_rows, ring.coefficients)
        self._red_rows = red
        self._red_pivots = pivots
        self.rank = self.n - len(pivots)
        # greedy basis: largest monomials whose reduced vectors are independent
        nonpivot = [j for j in range(self.n) if j not in pivots]
        self._nonpivot = nonpivot
        chosen = []
        chosen_mons = []
        basis_rows = []
        for j, mon in enumerate(self.mons):
            if len(chosen_mons) == self.rank:
                break
            vec = [0] * self.n
            vec[j] = 1
            nf = self._nf_vector(vec)
            compressed = [nf[c] for c in nonpivot]
            if ring.coefficients == "Q":
                _, piv = _rref_q(basis_rows + [compressed])
            else:
                _, piv = _rref_p(basis_rows + [compressed], ring.coefficients)
            if len(piv) == len(chosen_mons) + 1:
                chosen_mons.append(mon)
                chosen.append(compressed)
                basis_rows.append(compressed)
        if len(chosen_mons) != self.rank:
            raise RingError("no monomial basis over a field; cannot happen")
        self._rep_specs = [{m: 1} for m in chosen_mons]
        if self.rank:
            # coords solve: nf(p) restricted to non-pivot columns = B^T * c
            bt = la.transpose(chosen)
            if ring.coefficients == "Q":
                self._coord_matrix = _invert_q(bt)
            else:
                self._coord_matrix = _invert_p(bt, ring.coefficients)
        else:
            self._coord_matrix = []

    # -- vectors ----------------------------------------------------------

    def vector(self, p: Polynomial):
        vec = [0] * self.n
        for mon, c in p.items():
            vec[self._index[mon]] = c
        return vec

    def _nf_vector(self, vec):
        ring = self.ring
        if ring.coefficients == "Z":
            vec = list(vec)
            for i, j in self._hnf_pivots:
                h = self._hnf_rows[i][j]
                q = vec[j] // h
                if q:
                    row = self._hnf_rows[i]
                    vec = [a - q * b for a, b in zip(vec, row)]
            return vec
        if ring.coefficients == "Q":
            vec = [Fraction(v) for v in vec]
            for row, col in zip(self._red_rows, self._red_pivots):
                f = vec[col]
                if f:
                    vec = [a - f * b for a, b in zip(vec, row)]
            return vec
        p = ring.coefficients
        vec = [v % p for v in vec]
        for row, col in zip(self._red_rows, self._red_pivots):
            f = vec[col]
            if f:
                vec = [(a - f * b) % p for a, b in zip(vec, row)]
        return vec

    def normal_form(self, p: Polynomial) -> Polynomial:
        nf = self._nf_vector(self.vector(p))
        return Polynomial(
            self.ring.context, {self.mons[j]: nf[j] for j in range(self.n) if nf[j]}
        )

    def coordinates(self, p: Polynomial):
        ring = self.ring
        if self.rank == 0:
            return ()
        if ring.coefficients == "Z":
            vec = self.vector(p)
            zfree = [sum(u[j] * vec[j] for j in range(self.n)) for u in self._u_free]
            return tuple(
                sum(row[i] * zfree[i] for i in range(self.rank))
                for row in self._coord_matrix
            )
        nf = self._nf_vector(self.vector(p))
        compressed = [nf[c] for c in self._nonpivot]
        if ring.coefficients == "Q":
            return tuple(
                sum(row[i] * compressed[i] for i in range(self.rank))
                for row in self._coord_matrix
            )
        p_ = ring.coefficients
        return tuple(
            sum(row[i] * compressed[i] for i in range(self.rank)) % p_
            for row in self._coord_matrix
        )

    def torsion_coordinates(self, p: Polynomial):
        if self.ring.coefficients != "Z" or not self._torsion_rows:
            return ()
        vec = self.vector(p)
        return tuple(
            sum(u[j] * vec[j] for j in range(self.n)) % d
            for u, d in self._torsion_rows
        )

    def public(self) -> GradedPieceBasis:
        return GradedPieceBasis(
            degree=self.degree,
            rank=self.rank,
            torsion=self._torsion,
            representatives=self.representatives,
            _piece=self,
        )


# ---------------------------------------------------------------------------
# the ring


class GradedRing:
    """A finitely presented graded-commutative ring over Z, Q or F_p."""

    def __init__(self, context, relations, top_degree=None, coefficients="Z", name=None):
        if not (coefficients in ("Z", "Q") or (isinstance(coefficients, int) and coefficients >= 2)):
            raise RingError(f"unsupported coefficient ring {coefficients!r}")
        for w in context.weights:
            if w % 2:
                raise RingError("generator degrees must be even")
        rels = []
        for rel in relations:
            if rel.context != context:
                raise RingError("relation context does not match the ring")
            if isinstance(coefficients, int):
                rel = rel.reduce_mod(coefficients)
            if rel.is_zero():
                continue
            if not rel.is_homogeneous():
                raise RingError(f"relation {rel} is not homogeneous")
            if coefficients == "Z" and not rel.is_integral():
                raise RingError(f"relation {rel} has non-integer coefficients")
            rels.append(rel)
        self.context = context
        self.relations = tuple(rels)
        self.top_degree = top_degree
        self.coefficients = coefficients
        self.name = name
        # lazily filled; recomputation is idempotent so races are harmless
        self._pieces = {}

    def __repr__(self):
        label = self.name or "GradedRing"
        return f"<{label}: {len(self.context.names)} generators, {len(self.relations)} relations>"

    def variable(self, name) -> Polynomial:
        return Polynomial.variable(self.context, name)

    def _piece(self, d) -> _Piece:
        piece = self._pieces.get(d)
        if piece is None:
            piece = _Piece(self, d)
            self._pieces[d] = piece
        return piece

    def graded_basis(self, d) -> GradedPieceBasis:
        """Basis of the degree-d piece, with torsion invariant factors."""
        if d < 0:
            return GradedPieceBasis(degree=d, rank=0, torsion=(), representatives=())
        return self._piece(d).public()

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Canonical representative of the class of ``p``."""
        if p.context != self.context:
            raise RingError("polynomial context does not match the ring")
        if p.is_zero():
            return p
        if isinstance(self.coefficients, int):
            p = p.reduce_mod(self.coefficients)
            if p.is_zero():
                return p
        total = Polynomial.zero(self.context)
        for d, comp in p.components().items():
            total = total + self._piece(d).normal_form(comp)
        return total

    def coordinates(self, p: Polynomial, degree=None):
        """Coordinate vector of a homogeneous class over graded_basis(degree)."""
        if p.is_zero():
            if degree is None:
                raise DegreeError("degree required for the zero class")
            return tuple([0] * self._piece(degree).rank) if degree >= 0 else ()
        d = p.homogeneous_degree()
        if degree is not None and degree != d:
            raise DegreeError(f"class has degree {d}, expected {degree}")
        return self._piece(d).coordinates(p)

    def is_zero_class(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def classes_equal(self, p: Polynomial, q: Polynomial) -> bool:
        return self.is_zero_class(p - q)

    def poincare_series(self, maxdeg) -> list:
        """Rank of each graded piece for degrees 0..maxdeg."""
        return [self._piece(d).rank for d in range(maxdeg + 1)]

    def check_torsion_free(self, maxdeg) -> list:
        """Degrees with nonzero invariant factors, as (degree, torsion) pairs."""
        out = []
        for d in range(maxdeg + 1):
            piece = self._piece(d)
            if piece._torsion:
                out.append((d, piece._torsion))
        return out


# ---------------------------------------------------------------------------
# ring homomorphisms and umkehr maps


class RingHom:
    """A degree-preserving map of presented rings, given on generators."""

    def __init__(self, source: GradedRing, target: GradedRing, images: dict):
        self.source = source
        self.target = target
        self.images = dict(images)

    def apply(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.images)

    def degree_matrix(self, d):
        """Matrix of the induced map on degree-d coordinates (integer rings)."""
        if self.source.coefficients != "Z" or self.target.coefficients != "Z":
            raise RingError("degree matrices are computed for integer rings")
        src = self.source._piece(d)
        tgt = self.target._piece(d)
        if src._torsion or tgt._torsion:
            raise RingError(f"degree {d} has torsion; coordinate matrix undefined")
        cols = [tgt.coordinates(self.apply(rep)) for rep in src.representatives]
        return [[cols[j][i] for j in range(src.rank)] for i in range(tgt.rank)]

    def kernel_classes(self, d) -> list:
        """Source classes spanning the kernel in degree d."""
        src = self.source._piece(d)
        if src.rank == 0:
            return []
        tgt_rank = self.target._piece(d).rank
        if tgt_rank == 0:
            vecs = [[int(i == j) for i in range(src.rank)] for j in range(src.rank)]
        else:
            vecs = la.kernel_basis(self.degree_matrix(d))
        out = []
        for v in vecs:
            cls = Polynomial.zero(self.source.context)
            for c, rep in zip(v, src.representatives):
                cls = cls + c * rep
            out.append(cls)
        return out

    def is_degreewise_iso(self, d) -> bool:
        src_rank = self.source._piece(d).rank
        tgt_rank = self.target._piece(d).rank
        if src_rank != tgt_rank:
            return False
        if src_rank == 0:
            return True
        return la.determinant(self.degree_matrix(d)) in (1, -1)


def define_hom(source: GradedRing, target: GradedRing, images: dict) -> RingHom:
    """Validated ring homomorphism: every relation must map to zero."""
    if set(images) != set(source.context.names):
        raise RingError("images must be given for every generator")
    for name, weight in zip(source.context.names, source.context.weights):
        img = images[name]
        if img.context != target.context:
            raise RingError(f"image of {name} lives in the wrong context")
        if not img.is_zero() and img.homogeneous_degree() != weight:
            raise RingError(
                f"image of {name} has degree {img.homogeneous_degree()}, expected {weight}"
            )
    hom = RingHom(source, target, images)
    for rel in source.relations:
        residual = target.normal_form(hom.apply(rel))
        if not residual.is_zero():
            raise RelationNotPreservedError(rel, residual)
    return hom


def umkehr(hom: RingHom, target_class: Polynomial, multiplier: Polynomial) -> Polynomial:
    """Wrong-way transfer: pick x with hom(x) = target_class, return x*multiplier.

    The choice of preimage is certified irrelevant: every kernel class in
    that degree must annihilate the multiplier, otherwise the result would
    depend on the choice and an error is raised.
    """
    src = hom.source
    d = target_class.homogeneous_degree()
    tgt_piece = hom.target._piece(d)
    M = hom.degree_matrix(d)
    b = list(tgt_piece.coordinates(target_class))
    src_rank = src._piece(d).rank
    if tgt_piece.rank == 0:
        x = [0] * src_rank
    else:
        if src_rank == 0:
            raise NoPreimageError(f"no classes of degree {d} in the source")
        x = la.solve_integer(M, b)
        if x is None:
            raise NoPreimageError(f"{target_class} has no integral preimage in degree {d}")
    for k in hom.kernel_classes(d):
        if not src.is_zero_class(k * multiplier):
            raise AmbiguousUmkehrError(
                f"kernel class {k} does not annihilate the multiplier"
            )
    xpoly = Polynomial.zero(src.context)
    for c, rep in zip(x, src._piece(d).representatives):
        xpoly = xpoly + c * rep
    return src.normal_form(xpoly * multiplier)


# ---------------------------------------------------------------------------
# Poincare duality pairings


class FundamentalClass:
    """Chosen generator of the rank-1 top piece, fixing all pairing signs.

    ``positive_monomial`` is the monomial whose evaluation is declared
    positive; the evaluation map is the corresponding isomorphism of the
    top piece with Z.
    """

    def __init__(self, ring: GradedRing, positive_monomial):
        if ring.coefficients != "Z":
            raise RingError("fundamental classes require integer coefficients")
        if ring.top_degree is None:
            raise RingError("ring has no declared top degree")
        self.ring = ring
        self.top_degree = ring.top_degree
        piece = ring._piece(self.top_degree)
        if piece.rank != 1 or piece._torsion:
            raise RingError(
                f"top piece has rank {piece.rank} and torsion {piece._torsion}"
            )
        self.positive_monomial = tuple(positive_monomial)
        base = piece.coordinates(Polynomial.monomial(ring.context, positive_monomial))[0]
        if base == 0:
            raise RingError("distinguished monomial evaluates to zero")
        self._sign = 1 if base > 0 else -1

    def evaluate(self, p: Polynomial) -> int:
        """Integer pairing of a top-degree class against the fundamental class."""
        if p.is_zero():
            return 0
        if p.homogeneous_degree() != self.top_degree:
            raise DegreeError("class is not of top degree")
        return self._sign * self.ring._piece(self.top_degree).coordinates(p)[0]


def pairing_matrix(ring: GradedRing, fclass: FundamentalClass, d: int):
    """Intersection matrix of degree-d against degree-(top-d) basis classes."""
    top = fclass.top_degree
    p1 = ring._piece(d)
    p2 = ring._piece(top - d)
    if p1._torsion or p2._torsion:
        raise RingError("pairing matrices require torsion-free pieces")
    return [
        [fclass.evaluate(b * c) for c in p2.representatives]
        for b in p1.representatives
    ]


def check_unimodular_duality(ring: GradedRing, fclass: FundamentalClass):
    """Determinants of all complementary-degree pairing matrices.

    Returns a report of entries {degree, rows, cols, det, ok}; the pairing
    is unimodular when every entry has ok.
    """
    report = []
    top = fclass.top_degree
    for d in range(top + 1):
        r1 = ring._piece(d).rank
        r2 = ring._piece(top - d).rank
        if r1 != r2:
            report.append({"degree": d, "rows": r1, "cols": r2, "det": None, "ok": False})
            continue
        det = la.determinant(pairing_matrix(ring, fclass, d))
        report.append({"degree": d, "rows": r1, "cols": r2, "det": det, "ok": det in (1, -1)})
    return report


def kernel_of_pairing(ring: GradedRing, fclass: FundamentalClass, candidate: Polynomial) -> bool:
    """True when the class pairs to zero against the whole complementary basis.

    Non-degeneracy of the pairing then certifies that the class is zero.
    """
    if candidate.is_zero() or ring.is_zero_class(candidate):
        return True
    d = candidate.homogeneous_degree()
    comp = ring._piece(fclass.top_degree - d)
    return all(fclass.evaluate(candidate * c) == 0 for c in comp.representatives)


@dataclass(frozen=True)
class PairingEntrySolution:
    value: int
    det_coefficients: tuple  # highest power first, e.g. (3, -26) for 3x - 26
    det_value: int

    def det_polynomial(self) -> str:
        coeffs = self.det_coefficients
        deg = len(coeffs) - 1
        parts = []
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            power = deg - i
            if power == 0:
                body = str(abs(c))
            elif power == 1:
                body = "x" if abs(c) == 1 else f"{abs(c)}*x"
            else:
                body = f"x^{power}" if abs(c) == 1 else f"{abs(c)}*x^{power}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts) if parts else "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def solve_unknown_pairing_entry(rows) -> PairingEntrySolution:
    """Fill in the one unknown entry that makes the matrix unimodular.

    The unknown is marked by None and must sit on the diagonal or in a
    symmetric off-diagonal pair.  The determinant as a polynomial in the
    unknown is reported; exactly one integer root of det = +-1 must exist.
    """
    n = len(rows)
    unknown = [(i, j) for i in range(n) for j in range(len(rows[i])) if rows[i][j] is None]
    if not unknown:
        raise PairingEntryError("no unknown entry")
    is_diag = unknown == [(unknown[0][0], unknown[0][0])]
    is_pair = (
        len(unknown) == 2
        and unknown[0] == (unknown[1][1], unknown[1][0])
        and unknown[0][0] != unknown[0][1]
    )
    if not (is_diag or is_pair):
        raise PairingEntryError(
            "unknown must be a single diagonal entry or a symmetric pair"
        )

    def det_at(x):
        M = [[x if v is None else v for v in row] for row in rows]
        return la.determinant(M)

    if is_diag:
        c0 = det_at(0)
        c1 = det_at(1) - c0
        coeffs = (c1, c0)

        def det_poly(x):
            return c1 * x + c0

        candidates = set()
        for target in (1, -1):
            if c1 == 0:
                if c0 == target:
                    raise PairingEntryError("every integer works; matrix does not pin x")
                continue
            if (target - c0) % c1 == 0:
                candidates.add((target - c0) // c1)
    else:
        d0, d1, d2 = det_at(0), det_at(1), det_at(2)
        c2 = (d2 - 2 * d1 + d0) // 2
        c1 = d1 - d0 - c2
        c0 = d0
        coeffs = (c2, c1, c0)

        def det_poly(x):
            return c2 * x * x + c1 * x + c0

        candidates = set()
        for target in (1, -1):
            if c2 == 0:
                if c1 == 0:
                    if c0 == target:
                        raise PairingEntryError("every integer works; matrix does not pin x")
                    continue
                if (target - c0) % c1 == 0:
                    candidates.add((target - c0) // c1)
                continue
            disc = c1 * c1 - 4 * c2 * (c0 - target)
            if disc < 0:
                continue
            root = isqrt(disc)
            if root * root != disc:
                continue
            for num in (-c1 + root, -c1 - root):
                if num % (2 * c2) == 0:
                    candidates.add(num // (2 * c2))

    if not candidates:
        raise PairingEntryError("no integer value makes the determinant +-1")
    if len(candidates) > 1:
        raise PairingEntryError(
            f"multiple integer solutions {sorted(candidates)}; entry not determined"
        )
    x = candidates.pop()
    return PairingEntrySolution(value=x, det_coefficients=coeffs, det_value=det_poly(x))


# ---------------------------------------------------------------------------
# comparing presentations over Q


def _fraction_sqrt(value: Fraction):
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def solve_presentation_change(ring_q: GradedRing, alpha, beta, extra_relation=None):
    """Indecomposable degree-8 solutions x = lam*t^4 + mu*w of a quadratic relation.

    Searches for classes satisfying  t*x^2 + alpha*t^5*x = beta*t^9  with
    mu != 0, by expanding in the degree-18 basis and comparing coefficients.
    When ``extra_relation`` (a polynomial in a degree-2 and a degree-8
    variable) is given, candidates are kept only if substituting x for the
    degree-8 variable yields zero in the ring.  Returns the surviving
    (lam, mu) pairs.
    """
    if ring_q.coefficients != "Q":
        raise PresentationSolveError("the presentation solver works over Q")
    alpha, beta = Fraction(alpha), Fraction(beta)
    names = dict(zip(ring_q.context.names, ring_q.context.weights))
    tname = next((n for n, w in names.items() if w == 2), None)
    wname = next((n for n, w in names.items() if w == 8), None)
    if tname is None or wname is None or len(names) != 2:
        raise PresentationSolveError("expected exactly one degree-2 and one degree-8 generator")
    T = ring_q.variable(tname)
    W = ring_q.variable(wname)
    coords = lambda p: ring_q.coordinates(p, 18)

    A = coords(ring_q.normal_form(T ** 9))
    B = coords(ring_q.normal_form(T ** 5 * W))
    C = coords(ring_q.normal_form(T * W ** 2))
    rank = len(A)

    # locate the coordinate whose equation factors as mu * (2*B*lam + alpha*B)
    factor_index = next(
        (k for k in range(rank) if A[k] == 0 and C[k] == 0 and B[k] != 0), None
    )
    if factor_index is None:
        raise PresentationSolveError("no coordinate isolates the mixed lam*mu term")
    lam = -alpha / 2

    mu_sq = None
    for k in range(rank):
        if k == factor_index:
            continue
        const = A[k] * (lam * lam + alpha * lam - beta)
        if C[k] == 0:
            if const != 0:
                raise PresentationSolveError("inconsistent linear system for mu")
            continue
        value = -const / C[k]
        if mu_sq is not None and mu_sq != value:
            raise PresentationSolveError("contradictory constraints on mu^2")
        mu_sq = value
    if mu_sq is None:
        raise PresentationSolveError("mu is not constrained")
    mu = _fraction_sqrt(mu_sq)
    if mu is None:
        raise PresentationSolveError(f"mu^2 = {mu_sq} is not a rational square")
    if mu == 0:
        raise PresentationSolveError("mu = 0 gives a decomposable class")

    candidates = [(lam, mu), (lam, -mu)]
    survivors = []
    for lam_c, mu_c in candidates:
        x = lam_c * T ** 4 + mu_c * W
        check = T * x * x + alpha * (T ** 5) * x - beta * (T ** 9)
        if not ring_q.is_zero_class(check):
            raise PresentationSolveError("candidate fails the defining relation")
        if extra_relation is not None:
            ctx = extra_relation.context
            sub_names = dict(zip(ctx.names, ctx.weights))
            t2 = next(n for n, w in sub_names.items() if w == 2)
            e8 = next(n for n, w in sub_names.items() if w == 8)
            image = extra_relation.substitute({t2: T, e8: x})
            if not ring_q.is_zero_class(image):
                continue
        survivors.append((lam_c, mu_c))
    if not survivors:
        raise PresentationSolveError("no candidate survives the extra relation")
    return survivors
