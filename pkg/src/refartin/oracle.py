"""Definition-level lattice oracles for the linear base-change conductor.

Two exact models, independent of the character-pairing route:

* an equal-characteristic tame model: K = Q(zeta_n)((t)), O_L = O_K[pi] with
  pi^n = t and sigma(pi) = zeta_n pi.  Since t = pi^n, O_L is simply the
  polynomial ring Q(zeta_n)[pi] and valuations are read off exactly as the
  lowest nonzero pi-power;

* a mixed-characteristic monogenic model: the dense order Z[x]/(f) with f
  monic and Eisenstein at p (so x is a uniformizer of a totally ramified
  extension of Q_p), a Galois action given by integer polynomials, and
  valuations computed through norms: nu_L(y) = nu_p(Res(f, y)).

Both oracles compute c_lin(M) = nu_K(det phi) where phi is the multiplication
map (M (x) O_L)^Gamma (x) O_L -> M (x) O_L; the invariant lattice is found by
an exact kernel computation (field elimination in the tame model, saturated
integer kernels via unimodular reduction in the monogenic model).

The monogenic model also extracts lower-numbering ramification filtrations,
i_Gamma(sigma) = nu_L(sigma(x) - x), and tame characters.  Matching the
residue of sigma(x)/x to a root of unity in Q(zeta_n) requires choosing a
prime of Z[zeta_n] above p; the choice is an explicit parameter
(``prime_choice`` indexes the roots of Phi_n mod p in increasing order), and
different choices yield Galois-conjugate tame characters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from ._linalg import bareiss_poly_det, field_kernel, integer_kernel
from ._poly import pcompose, pdeg, pmod, pmul, presultant, psub, ptrim
from .cyclotomic import Cyclotomic, ONE, ZERO, make_root
from .grouptheory import FiniteGroup, group_from_table
from .ramification import RamificationData, build_ramification


class OracleError(ValueError):
    """Raised when oracle input violates a structural invariant."""


# ---------------------------------------------------------------------------
# equal-characteristic tame model


@dataclass(frozen=True)
class TameModel:
    """O_L = Q(zeta_n)[pi] with pi^n = t and sigma(pi) = zeta_n pi.

    sigma has order n and fixes the base ring Q(zeta_n)[t]; nu_L(pi) = 1 and
    nu_L(t) = n.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise OracleError("tame degree must be positive")

    def invariant_basis(self, exponents: Sequence[int]) -> list[list[Cyclotomic]]:
        """Basis of (M (x) O_L)^sigma for the diagonal action
        sigma = diag(zeta^i_1, ..., zeta^i_d) on M, as vectors over the
        O_K-basis e_j (x) pi^a (j major, a minor)."""
        n, d = self.n, len(exponents)
        dim = d * n
        rows = []
        for j in range(d):
            for a in range(n):
                row = [ZERO] * dim
                row[j * n + a] = make_root(n, exponents[j] + a) - ONE
                rows.append(row)
        basis = field_kernel(rows, ONE)
        if len(basis) != d:
            raise OracleError(
                f"invariant lattice rank {len(basis)} differs from module rank {d}"
            )
        return basis

    def clin(self, exponents: Sequence[int]) -> Fraction:
        """nu_K(det phi) = (1/n) nu_L(det phi) for the diagonal action."""
        n, d = self.n, len(exponents)
        basis = self.invariant_basis(exponents)
        # phi matrix over O_L = Q(zeta_n)[pi]: column k lists the O_L
        # coordinates of the k-th invariant vector
        mat = [
            [ptrim([basis[k][j * n + a] for a in range(n)]) for k in range(d)]
            for j in range(d)
        ]
        det = bareiss_poly_det(mat)
        if not det:
            raise OracleError("base-change map is not injective")
        val = next(i for i, c in enumerate(det) if c)
        return Fraction(val, n)


def oracle_tame_clin(n: int, exponents: Sequence[int]) -> Fraction:
    """c_lin for the diagonal action with the given exponents on the tame
    cyclic model of degree n; equals sum_j ((n - i_j) mod n)/n."""
    return TameModel(n).clin([i % n for i in exponents])


# ---------------------------------------------------------------------------
# mixed-characteristic monogenic model


@dataclass(frozen=True)
class MonogenicOrder:
    """The order Z[x]/(f) of a totally ramified Galois extension of Q_p.

    ``f`` is monic and Eisenstein at p, ascending coefficients; ``galois``
    lists one integer polynomial per group element (reduced mod f, identity
    first) with g(x) again a root of f; composition must close into a group
    of order deg f.  ``group`` is that abstract group, with element i the
    automorphism x -> galois[i](x).
    """

    p: int
    f: tuple[int, ...]
    galois: tuple[tuple[int, ...], ...]
    group: FiniteGroup = field(init=False, compare=False)

    def __post_init__(self):
        p, f = self.p, self.f
        if p < 2 or any(p % q == 0 for q in range(2, p) if q * q <= p):
            raise OracleError(f"{p} is not prime")
        if len(f) < 2 or f[-1] != 1:
            raise OracleError("f must be monic of positive degree")
        if any(c % p for c in f[:-1]) or f[0] % (p * p) == 0:
            raise OracleError(f"f is not Eisenstein at {p}")
        e = self.degree
        maps = [self._reduce_int(g) for g in self.galois]
        object.__setattr__(self, "galois", tuple(maps))
        if len(maps) != e:
            raise OracleError(
                f"a Galois order needs {e} automorphisms, got {len(maps)}"
            )
        if maps[0] != self._reduce_int((0, 1)):
            raise OracleError("the first Galois map must be the identity x -> x")
        if len(set(maps)) != e:
            raise OracleError("Galois maps are not distinct")
        ff = tuple(Fraction(c) for c in f)
        for g in maps:
            comp = pmod(pcompose(ff, tuple(Fraction(c) for c in g)), ff)
            if comp:
                raise OracleError("a Galois map does not send x to a root of f")
        index = {g: i for i, g in enumerate(maps)}
        table = []
        for a in maps:
            row = []
            for b in maps:
                # (sigma_a o sigma_b)(x) = g_b(g_a(x)) mod f
                comp = self._reduce_int(_int_compose_mod(b, a, f))
                if comp not in index:
                    raise OracleError("Galois maps do not close under composition")
                row.append(index[comp])
            table.append(row)
        object.__setattr__(self, "group", group_from_table(table))

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    def _reduce_int(self, g: Sequence[int]) -> tuple[int, ...]:
        out = _int_poly_mod(tuple(int(c) for c in g), self.f)
        return out + (0,) * (self.degree - len(out))

    def sigma_matrix(self, i: int) -> list[list[int]]:
        """Matrix of the i-th automorphism on the Z-basis 1, x, .., x^(e-1)."""
        e = self.degree
        g = self.galois[i]
        cols = []
        cur = (1,) + (0,) * (e - 1)  # g^0
        for _ in range(e):
            cols.append(cur)
            cur = self._reduce_int(_int_poly_mul(cur, g))
        return [[cols[a][b] for a in range(e)] for b in range(e)]


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _int_poly_mod(a: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    df = len(f) - 1
    while len(a) > df:
        c = a[-1]
        if c:
            for j in range(df + 1):
                a[len(a) - 1 - df + j] -= c * f[j]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _int_poly_add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _int_compose_mod(outer: Sequence[int], inner: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    """outer(inner(x)) mod f, by Horner evaluation over the integers."""
    out: tuple[int, ...] = ()
    for c in reversed(list(outer)):
        out = _int_poly_mod(_int_poly_mul(out, inner), f)
        out = _int_poly_add(out, (c,))
    return _int_poly_mod(out, f)


def build_monogenic_order(p: int, f: Sequence[int], galois: Sequence[Sequence[int]]) -> MonogenicOrder:
    return MonogenicOrder(int(p), tuple(int(c) for c in f), tuple(tuple(int(c) for c in g) for g in galois))


def valuation_monogenic(order: MonogenicOrder, y: Sequence[int] | Sequence[Fraction]):
    """nu_L(y) for y given as a polynomial in x: nu_p(Res(f, y)).

    Returns math.inf for y = 0.  Valid because f is Eisenstein, so x is a
    uniformizer of the single (totally ramified) place above p.
    """
    ff = tuple(Fraction(c) for c in order.f)
    yy = pmod(tuple(Fraction(c) for c in y), ff)
    if not yy:
        return math.inf
    res = presultant(ff, yy)
    return _val_p(res, order.p)


def _val_p(q: Fraction, p: int) -> int:
    if q == 0:
        raise ArithmeticError("valuation of zero")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def regular_action(group: FiniteGroup) -> list[list[list[int]]]:
    """Permutation matrices of the left regular representation, one per element."""
    m = group.order
    out = []
    for s in range(m):
        mat = [[0] * m for _ in range(m)]
        for t in range(m):
            mat[group.table[s][t]][t] = 1
        out.append(mat)
    return out


def oracle_monogenic_clin(order: MonogenicOrder, action: Sequence[Sequence[Sequence[int]]]) -> Fraction:
    """c_lin(M) = nu_K(det phi) computed verbatim in the monogenic model.

    ``action`` lists one integer matrix per group element (indexed like
    ``order.galois``) defining the Galois action on the lattice M.  The
    invariant lattice is the integer kernel of the stacked (sigma (x) sigma - 1)
    matrices (saturated by construction); the determinant of phi is taken in
    Q[x]/(f) and its valuation through the norm.
    """
    e = order.degree
    grp = order.group
    mats = [[list(map(int, row)) for row in m] for m in action]
    if len(mats) != grp.order:
        raise OracleError("one action matrix per group element required")
    d = len(mats[0])
    if any(len(m) != d or any(len(row) != d for row in m) for m in mats):
        raise OracleError("action matrices must be square of equal size")
    if mats[0] != [[1 if i == j else 0 for j in range(d)] for i in range(d)]:
        raise OracleError("identity element must act as the identity matrix")
    for a in range(grp.order):
        for b in range(grp.order):
            if _mat_mul(mats[a], mats[b]) != mats[grp.table[a][b]]:
                raise OracleError("action matrices do not define a representation")
    # stacked (B_sigma - 1) over all nontrivial sigma, B = A (x) S
    stacked: list[list[int]] = []
    dim = d * e
    for s in range(1, grp.order):
        smat = order.sigma_matrix(s)
        amat = mats[s]
        for j2 in range(d):
            for a2 in range(e):
                row = [0] * dim
                for j in range(d):
                    if amat[j2][j] == 0:
                        continue
                    for a in range(e):
                        row[j * e + a] += amat[j2][j] * smat[a2][a]
                row[j2 * e + a2] -= 1
                stacked.append(row)
    kernel = integer_kernel(stacked, dim)
    if len(kernel) != d:
        raise OracleError(
            f"invariant lattice rank {len(kernel)} differs from module rank {d}; "
            "the action is not through a finite quotient compatible with the order"
        )
    ff = tuple(Fraction(c) for c in order.f)
    mat = [
        [tuple(Fraction(kernel[k][j * e + a]) for a in range(e)) for k in range(d)]
        for j in range(d)
    ]
    det = _nf_det(mat, ff)
    if not det:
        raise OracleError("base-change map is not injective")
    val = valuation_monogenic(order, det)
    return Fraction(val, e)


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _nf_mul(a, b, f):
    return pmod(pmul(a, b), f)


def _nf_inv(a, f):
    from ._poly import pxgcd, pscale

    g, s, _ = pxgcd(ptrim(a), f)
    if pdeg(g) != 0:
        raise ZeroDivisionError("element is not invertible modulo f")
    return pscale(s, 1 / g[0])


def _nf_det(mat: list[list[tuple]], f: tuple) -> tuple:
    """Determinant over Q[x]/(f) by Gaussian elimination with exact fractions."""
    n = len(mat)
    a = [[ptrim(x) for x in row] for row in mat]
    det: tuple = (Fraction(1),)
    sign = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k]), None)
        if pivot is None:
            return ()
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        pk = a[k][k]
        det = _nf_mul(det, pk, f)
        inv = _nf_inv(pk, f)
        for i in range(k + 1, n):
            if a[i][k]:
                factor = _nf_mul(a[i][k], inv, f)
                for j in range(k, n):
                    a[i][j] = psub(a[i][j], _nf_mul(factor, a[k][j], f))
    if sign < 0:
        det = tuple(-c for c in det)
    return det


# ---------------------------------------------------------------------------
# ramification data extracted from monogenic orders


class TameCharacterData(NamedTuple):
    generator: int  # group element index generating the tame quotient
    exponent: int  # Psi(generator) = zeta_n^exponent
    n: int  # tame degree
    root: int  # chosen root of Phi_n mod p (the prime of Z[zeta_n] used)


def _residue_units(order: MonogenicOrder) -> list[int]:
    """sigma(x)/x mod the maximal ideal, per group element: an element of
    F_p^x, namely the linear coefficient of g_sigma reduced mod p."""
    p = order.p
    out = []
    for g in order.galois:
        u = (g[1] if len(g) > 1 else 0) % p
        if u == 0:
            raise OracleError("degenerate Galois map: sigma(x)/x is not a unit")
        out.append(u)
    return out


def phi_roots_mod_p(n: int, p: int) -> list[int]:
    """Roots of Phi_n modulo p in increasing order (the primes above p)."""
    from .cyclotomic import cyclotomic_polynomial

    phi = cyclotomic_polynomial(n)
    return [
        r
        for r in range(p)
        if sum(c * pow(r, i, p) for i, c in enumerate(phi)) % p == 0
    ]


def tame_character_from_monogenic(order: MonogenicOrder, prime_choice: int = 0) -> TameCharacterData:
    """The tame character of the extension modeled by the order.

    The residue map sigma -> sigma(x)/x mod m identifies the tame quotient
    with mu_n(F_p); the Teichmueller-style identification with mu_n in
    Q(zeta_n) is made through the prime (p, zeta_n - r) of Z[zeta_n], where r
    is the ``prime_choice``-th root of Phi_n mod p.  Different choices give
    Galois-conjugate characters.
    """
    units = _residue_units(order)
    p = order.p
    grp = order.group
    wild = [i for i, u in enumerate(units) if u == 1]
    n = grp.order // len(wild)
    if n == 1:
        raise OracleError("the extension has trivial tame quotient")
    if math.gcd(p, n) != 1:
        raise OracleError(f"tame degree {n} not coprime to p={p}")
    for a in range(grp.order):
        for b in range(grp.order):
            if units[grp.table[a][b]] != units[a] * units[b] % p:
                raise OracleError("residue map is not a homomorphism")
    roots = phi_roots_mod_p(n, p)
    if not 0 <= prime_choice < len(roots):
        raise OracleError(
            f"prime_choice {prime_choice} out of range: {len(roots)} primes above {p}"
        )
    root = roots[prime_choice]
    gen = min(
        g for g in range(grp.order) if _mult_order_mod(units[g], p) == n
    )
    exponent = next(c for c in range(n) if pow(root, c, p) == units[gen])
    return TameCharacterData(gen, exponent, n, root)


def _mult_order_mod(a: int, p: int) -> int:
    x, r = a % p, 1
    while x != 1:
        x = (x * a) % p
        r += 1
    return r


def filtration_from_monogenic(order: MonogenicOrder, prime_choice: int = 0) -> RamificationData:
    """Lower-numbering ramification data of the extension modeled by the order:
    Gamma_i = { sigma : nu_L(sigma(x) - x) >= i + 1 }.

    The tame character (when the tame quotient is nontrivial) is extracted
    with :func:`tame_character_from_monogenic` at the given prime choice.
    The output passes full ramification validation.
    """
    grp = order.group
    e = order.degree
    depths = {}
    for i, g in enumerate(order.galois):
        if i == 0:
            continue
        diff = list(g)
        if len(diff) < 2:
            diff = diff + [0] * (2 - len(diff))
        diff[1] -= 1
        v = valuation_monogenic(order, diff)
        if v is math.inf or v < 1:
            raise OracleError("automorphism does not move the uniformizer properly")
        depths[i] = v
    filtration = []
    i = 0
    while True:
        members = [0] + [g for g, v in depths.items() if v >= i + 1]
        if len(members) == 1 and i > 0:
            break
        filtration.append(sorted(members))
        if len(members) == 1:
            break
        i += 1
    wild = len(filtration[1]) if len(filtration) > 1 else 1
    n = len(filtration[0]) // wild
    tame = None
    if n > 1:
        tc = tame_character_from_monogenic(order, prime_choice)
        tame = (tc.generator, tc.exponent)
    return build_ramification(grp, filtration, order.p, tame)
