"""The ideal of constant-free symmetric polynomials and its quotient tools.

Everything here works in the ring k[z_1, ..., z_ell].  The ideal I_S is
generated by all symmetric polynomials with zero constant term; the tail
complete homogeneous polynomials

    g_i = h_i(z_i, ..., z_ell),   i = 1..ell

form a Groebner basis of it under lex with z_1 > z_2 > ... > z_ell, which
makes normal forms cheap: reduced monomials are exactly those with
deg_{z_i} < i.  On top of the normal form sit the block-symmetry notions
driven by a composition (lambda_1, ..., lambda_n) of ell: invariance tests,
the averaging projector over S_{lambda_1} x ... x S_{lambda_n}, and the
rewriting of a block-symmetric polynomial in the elementary symmetric
polynomials of its blocks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import RingMismatchError
from .polyring import LEX, Monomial, Poly, Ring, divide

__all__ = [
    "Composition",
    "SymBasis",
    "zring",
    "complete_homogeneous",
    "elementary_symmetric",
    "groebner_basis_IS",
    "normal_form_IS",
    "in_IS",
    "nu",
    "is_lambda_symmetric",
    "sym_lambda_average",
    "block_sigma",
    "decompose_block_elementary",
    "expand_block_elementary",
    "block_elementary_ring",
]

# Full-group averaging is used up to this group size; beyond it the projector
# falls back to per-block orbit sums.
FULL_GROUP_LIMIT = 10_000


class Composition:
    """Non-negative integer parts (lambda_1..lambda_n) with partial sums.

    prefix(i) is lambda_1 + ... + lambda_{i-1} for 1-based i, so prefix(1)
    is 0 and prefix(n+1) equals ell.  Zero parts are allowed and denote
    empty blocks.
    """

    __slots__ = ("parts", "_prefix")

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError("composition parts must be non-negative: %r" % (parts,))
        self.parts = parts
        acc = [0]
        for p in parts:
            acc.append(acc[-1] + p)
        self._prefix = tuple(acc)

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def ell(self) -> int:
        return self._prefix[-1]

    def prefix(self, i: int) -> int:
        """Partial sum before block i (1-based)."""
        return self._prefix[i - 1]

    def block(self, i: int) -> range:
        """0-based variable indices of block i (1-based)."""
        return range(self._prefix[i - 1], self._prefix[i])

    def blocks(self):
        return [self.block(i) for i in range(1, self.n + 1)]

    def __eq__(self, other):
        return isinstance(other, Composition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return "Composition%r" % (self.parts,)


class SymBasis:
    """The ordered Groebner basis (g_1, ..., g_ell) of I_S."""

    __slots__ = ("ell", "elements")

    def __init__(self, ell: int, elements: tuple[Poly, ...]):
        self.ell = ell
        self.elements = elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.ell


@lru_cache(maxsize=None)
def zring(ell: int) -> Ring:
    if ell < 0:
        raise ValueError("variable count must be non-negative")
    return Ring(tuple("z%d" % (i + 1) for i in range(ell)))


def complete_homogeneous(d: int, k: int, ell: int) -> Poly:
    """Sum of all degree-d monomials in z_k, ..., z_ell (1-based k)."""
    if not 1 <= k <= ell:
        raise ValueError("start index %d out of range 1..%d" % (k, ell))
    if d < 0:
        raise ValueError("degree must be non-negative")
    ring = zring(ell)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(k - 1, ell), d):
        exps = [0] * ell
        for i in combo:
            exps[i] += 1
        terms[Monomial(tuple(exps))] = Fraction(1)
    return Poly(ring, terms)


def elementary_symmetric(ring: Ring, d: int, indices) -> Poly:
    """Sum of all squarefree degree-d monomials in the given variables."""
    indices = list(indices)
    if not 1 <= d <= len(indices):
        raise ValueError(
            "elementary symmetric degree %d out of range 1..%d" % (d, len(indices))
        )
    terms = {}
    for combo in itertools.combinations(indices, d):
        exps = [0] * ring.nvars
        for i in combo:
            exps[i] = 1
        terms[Monomial(tuple(exps))] = Fraction(1)
    return Poly(ring, terms)


@lru_cache(maxsize=None)
def groebner_basis_IS(ell: int) -> SymBasis:
    """The basis (h_1(z_1..z_ell), h_2(z_2..z_ell), ..., h_ell(z_ell))."""
    if ell < 1:
        raise ValueError("need at least one variable")
    return SymBasis(ell, tuple(complete_homogeneous(i, i, ell) for i in range(1, ell + 1)))


def normal_form_IS(p: Poly, ell: int | None = None) -> Poly:
    """Fully reduced remainder of p modulo I_S under lex z_1 > ... > z_ell."""
    if ell is None:
        ell = p.ring.nvars
    if p.ring != zring(ell):
        raise RingMismatchError("polynomial not in the %d-variable z ring" % ell)
    _, rem = divide(p, groebner_basis_IS(ell).elements, LEX)
    return rem


def in_IS(p: Poly) -> bool:
    return normal_form_IS(p).is_zero()


def nu(p: Poly, ell: int | None = None) -> int | None:
    """Minimal total degree in the normal form; None for the zero class."""
    nf = normal_form_IS(p, ell)
    return nf.min_degree()


# -- lambda-symmetry ----------------------------------------------------------


def _check_arity(p: Poly, lam: Composition):
    if p.ring.nvars != lam.ell:
        raise RingMismatchError(
            "polynomial has %d variables but the composition needs %d"
            % (p.ring.nvars, lam.ell)
        )


def is_lambda_symmetric(p: Poly, lam: Composition) -> bool:
    """True iff p is invariant within every block of the composition."""
    _check_arity(p, lam)
    for block in lam.blocks():
        for j in range(block.start, block.stop - 1):
            if p.swap_vars(j, j + 1) != p:
                return False
    return True


def sym_lambda_average(p: Poly, lam: Composition) -> Poly:
    """Average of p over the product of per-block symmetric groups.

    An idempotent linear projector onto the lambda-symmetric subspace; for
    small groups it enumerates the group literally, otherwise it averages
    one block at a time through monomial orbit sums.
    """
    _check_arity(p, lam)
    group_size = 1
    for part in lam.parts:
        group_size *= factorial(part)
    if group_size <= FULL_GROUP_LIMIT:
        result = p.ring.zero()
        blocks = [list(b) for b in lam.blocks() if len(b) > 0]
        for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
            images = list(range(p.ring.nvars))
            for block, perm in zip(blocks, perms):
                for src, dst in zip(block, perm):
                    images[src] = dst
            result = result + p.permute_vars(images)
        return result.scale(Fraction(1, group_size))
    for i in range(1, lam.n + 1):
        p = _average_block(p, list(lam.block(i)))
    return p


def _average_block(p: Poly, block: list[int]) -> Poly:
    if len(block) <= 1:
        return p
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        pattern = [mono.exps[i] for i in block]
        arrangements = _distinct_arrangements(tuple(sorted(pattern, reverse=True)))
        share = coeff / len(arrangements)
        for arr in arrangements:
            exps = list(mono.exps)
            for pos, e in zip(block, arr):
                exps[pos] = e
            key = Monomial(tuple(exps))
            s = out.get(key, Fraction(0)) + share
            if s:
                out[key] = s
            else:
                del out[key]
    return Poly(p.ring, out)


@lru_cache(maxsize=4096)
def _distinct_arrangements(values: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All distinct orderings of a multiset, without factorial blowup."""
    if len(values) <= 1:
        return (values,)
    out = []
    seen = set()
    for i, v in enumerate(values):
        if v in seen:
            continue
        seen.add(v)
        rest = values[:i] + values[i + 1 :]
        for tail in _distinct_arrangements(rest):
            out.append((v,) + tail)
    return tuple(out)


def block_sigma(lam: Composition, i: int, j: int, ring: Ring | None = None) -> Poly:
    """Elementary symmetric polynomial of degree j in the variables of block i."""
    ring = ring if ring is not None else zring(lam.ell)
    return elementary_symmetric(ring, j, lam.block(i))


def block_elementary_ring(lam: Composition) -> Ring:
    """Ring of formal block elementary symmetrics y{i}_{j}, 1 <= j <= lambda_i."""
    names = []
    for i, part in enumerate(lam.parts, start=1):
        for j in range(1, part + 1):
            names.append("y%d_%d" % (i, j))
    return Ring(tuple(names))


def decompose_block_elementary(p: Poly, lam: Composition) -> Poly:
    """Rewrite a lambda-symmetric p as a polynomial in block elementary
    symmetrics.

    Classical elimination: the lex leading monomial of a block-symmetric
    polynomial is non-increasing inside every block, so it is matched by a
    unique product of block sigma powers; subtracting drives the leading
    monomial strictly down.  Substituting y{i}_{j} -> sigma_j(block i) into
    the result recovers p exactly.
    """
    _check_arity(p, lam)
    if not is_lambda_symmetric(p, lam):
        raise ValueError("input is not symmetric within the blocks of %r" % (lam,))
    yring = block_elementary_ring(lam)
    sigma_cache: dict[tuple[int, int], Poly] = {}

    def sigma(i, j):
        if (i, j) not in sigma_cache:
            sigma_cache[(i, j)] = block_sigma(lam, i, j, p.ring)
        return sigma_cache[(i, j)]

    result_terms: dict[Monomial, Fraction] = {}
    work = p
    while not work.is_zero():
        lm, lc = work.leading()
        y_exps = [0] * yring.nvars
        product = p.ring.one()
        y_slot = 0
        for i in range(1, lam.n + 1):
            block = list(lam.block(i))
            exps = [lm.exps[v] for v in block] + [0]
            for j in range(1, len(block) + 1):
                e = exps[j - 1] - exps[j]
                if e < 0:
                    raise ValueError(
                        "leading monomial not sorted within block %d; "
                        "input is not block-symmetric" % i
                    )
                y_exps[y_slot] = e
                y_slot += 1
                if e:
                    product = product * sigma(i, j) ** e
        result_terms[Monomial(tuple(y_exps))] = lc
        work = work - product.scale(lc)
    return Poly(yring, result_terms)


def expand_block_elementary(q: Poly, lam: Composition) -> Poly:
    """Substitute y{i}_{j} -> sigma_j(block i); inverse of the decomposition."""
    yring = block_elementary_ring(lam)
    if q.ring != yring:
        raise RingMismatchError("polynomial not in the block elementary ring of %r" % (lam,))
    target = zring(lam.ell)
    images = []
    for i, part in enumerate(lam.parts, start=1):
        for j in range(1, part + 1):
            images.append(block_sigma(lam, i, j, target))
    return q.substitute(target, images)
