"""Exact arithmetic in the definite quaternion algebra B = (-1, N).

Elements are rational 4-tuples in the basis (1, i, j, k) with i^2 = -1,
j^2 = N and k = ij.  Lattices are kept in a canonical rational Hermite normal
form so equality of lattices is equality of their keys.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
import itertools

from .arith import det, hnf, is_square, mat_inv, rational_hnf, short_vectors


@dataclass(frozen=True)
class Quat:
    t: Fraction
    x: Fraction
    y: Fraction
    z: Fraction
    N: int

    @classmethod
    def make(cls, N, t=0, x=0, y=0, z=0):
        return cls(Fraction(t), Fraction(x), Fraction(y), Fraction(z), N)

    @property
    def coords(self):
        return (self.t, self.x, self.y, self.z)

    def __add__(self, o):
        if not isinstance(o, Quat):
            o = Quat.make(self.N, o)
        return Quat(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z, self.N)

    __radd__ = __add__

    def __neg__(self):
        return Quat(-self.t, -self.x, -self.y, -self.z, self.N)

    def __sub__(self, o):
        return self + (-o if isinstance(o, Quat) else Quat.make(self.N, -o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Quat):
            o = Fraction(o)
            return Quat(self.t * o, self.x * o, self.y * o, self.z * o, self.N)
        a, b = -1, self.N
        t1, x1, y1, z1 = self.coords
        t2, x2, y2, z2 = o.coords
        return Quat(t1 * t2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
                    t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
                    t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
                    t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
                    self.N)

    def __rmul__(self, o):
        return self * o

    def __truediv__(self, o):
        if isinstance(o, Quat):
            return self * o.inverse()
        return self * (1 / Fraction(o))

    def conj(self):
        return Quat(self.t, -self.x, -self.y, -self.z, self.N)

    def norm(self):
        n = -self.N
        return self.t ** 2 + self.x ** 2 + n * self.y ** 2 + n * self.z ** 2

    def trace(self):
        return 2 * self.t

    def inverse(self):
        return self.conj() * (1 / self.norm())

    def is_integral(self):
        return self.norm().denominator == 1 and self.trace().denominator == 1

    def __str__(self):
        parts = []
        for c, s in zip(self.coords, ("", "i", "j", "k")):
            if c:
                parts.append(f"{c}{s}" if s == "" or c not in (1, -1) else ("-" if c < 0 else "") + s)
        return " + ".join(parts).replace("+ -", "- ") or "0"


def basis_quats(N):
    return [Quat.make(N, *[int(i == j) for j in range(4)]) for i in range(4)]


def trace_pairing(x, y):
    """Tr(x ybar)."""
    return (x * y.conj()).trace()


@dataclass(frozen=True)
class QuatLattice:
    """Full rank Z-lattice in B in canonical form: basis rows = H / d."""
    H: tuple
    d: int
    N: int

    @classmethod
    def from_quats(cls, gens):
        gens = list(gens)
        N = gens[0].N
        H, d = rational_hnf([q.coords for q in gens])
        if len(H) != 4:
            raise ValueError("lattice is not of full rank")
        return cls(H, d, N)

    @property
    def basis(self):
        return [Quat(*(Fraction(c, self.d) for c in row), self.N) for row in self.H]

    def matrix(self):
        return [[Fraction(c, self.d) for c in row] for row in self.H]

    def coordinates(self, q):
        """Coordinates of q in the lattice basis (rationals)."""
        # q = c M  =>  c = q M^-1
        Minv = _inverse_cache(self)
        v = q.coords
        return [sum(v[r] * Minv[r][c] for r in range(4)) for c in range(4)]

    def __contains__(self, q):
        return all(c.denominator == 1 for c in self.coordinates(q))

    def contains_lattice(self, other):
        return all(b in self for b in other.basis)

    def __mul__(self, other):
        if isinstance(other, QuatLattice):
            return QuatLattice.from_quats([x * y for x in self.basis for y in other.basis])
        if isinstance(other, Quat):
            return QuatLattice.from_quats([x * other for x in self.basis])
        return QuatLattice.from_quats([x * Fraction(other) for x in self.basis])

    def __rmul__(self, other):
        if isinstance(other, Quat):
            return QuatLattice.from_quats([other * x for x in self.basis])
        return self * other

    def __add__(self, other):
        return QuatLattice.from_quats(self.basis + other.basis)

    def conj(self):
        return QuatLattice.from_quats([b.conj() for b in self.basis])

    def gram(self, basis=None):
        """Tr(x ybar) on the basis; v^T G v = 2 Norm(sum v_i b_i)."""
        bs = basis or self.basis
        return [[trace_pairing(x, y) for y in bs] for x in bs]

    def index_in(self, other):
        """[other : self] for self contained in other."""
        return det(self.matrix()) / det(other.matrix())

    def element(self, v):
        out = Quat.make(self.N)
        for c, b in zip(v, self.basis):
            if c:
                out = out + b * c
        return out

    def dump(self):
        return [[str(Fraction(c, self.d)) for c in row] for row in self.H]


_INV = {}


def _inverse_cache(L):
    key = (L.H, L.d)
    inv = _INV.get(key)
    if inv is None:
        inv = mat_inv(L.matrix())
        if len(_INV) > 20000:
            _INV.clear()
        _INV[key] = inv
    return inv


# -- orders -------------------------------------------------------------------

def standard_maximal_order(N):
    """<(1+j)/2, (i+k)/2, j, k>."""
    if N >= 0 or N % 4 != 1:
        raise ValueError("N must be negative and = 1 mod 4")
    h = Fraction(1, 2)
    return QuatLattice.from_quats([Quat.make(N, h, 0, h, 0), Quat.make(N, 0, h, 0, h),
                                   Quat.make(N, 0, 0, 1, 0), Quat.make(N, 0, 0, 0, 1)])


def _multiplier_order(L, side):
    """{x : x L in L} (side='left') or {x : L x in L} (side='right')."""
    # columns of the 4x16 matrix whose rows are coordinates of e_m * b_k
    cols = []
    E = basis_quats(L.N)
    for b in L.basis:
        rows = []
        for e in E:
            prod = e * b if side == "left" else b * e
            rows.append(L.coordinates(prod))
        for c in range(4):
            cols.append([rows[m][c] for m in range(4)])
    # x (in 1,i,j,k coordinates) must pair integrally with every column
    Hc, dc = rational_hnf(cols)
    C = [[Fraction(v, dc) for v in r] for r in Hc]
    Cinv = mat_inv(C)
    dual = [[Cinv[r][c] for r in range(4)] for c in range(4)]   # rows of (C^-1)^T
    return QuatLattice.from_quats([Quat(*row, L.N) for row in dual])


def left_order(L):
    return _multiplier_order(L, "left")


def right_order(L):
    return _multiplier_order(L, "right")


def is_order(L):
    one = Quat.make(L.N, 1)
    if one not in L:
        return False
    return all(x * y in L for x in L.basis for y in L.basis)


def _frac_gcd(values):
    num = 0
    den = 1
    for v in values:
        v = Fraction(v)
        den = den * v.denominator // gcd(den, v.denominator)
    for v in values:
        num = gcd(num, int(Fraction(v) * den))
    return Fraction(num, den)


def lattice_norm(L):
    """Positive generator of the Z-module spanned by Norm(x), x in L."""
    bs = L.basis
    vals = [b.norm() for b in bs]
    vals += [trace_pairing(bs[a], bs[c]) for a in range(4) for c in range(a + 1, 4)]
    return _frac_gcd(vals)


def discriminant(L):
    """det of the trace form Tr(x ybar) on a basis of L."""
    return det(L.gram())


def is_maximal_ideal_pair(L):
    """True iff disc(L) = N^2 Norm(L)^4, i.e. the left order of L is maximal."""
    return discriminant(L) == L.N ** 2 * lattice_norm(L) ** 4


def short_elements(L, bound):
    """Nonzero elements x of L with Norm(x) <= bound, with their coordinates."""
    G = L.gram()
    return [(v, L.element(v)) for v in short_vectors(G, 2 * Fraction(bound))]


def elements_of_norm(L, n):
    return [q for v, q in short_elements(L, n) if q.norm() == n]


def unit_count(O):
    return len(elements_of_norm(O, 1))


def embedding_count(O):
    """Trace-zero elements of norm |N| in O divided by the number of units.

    This counts embeddings of Z[sqrt N] modulo conjugation by O^x / {+-1},
    counting an embedding and its conjugate separately.
    """
    n = -O.N
    count = sum(1 for q in elements_of_norm(O, n) if q.t == 0)
    return Fraction(count, unit_count(O))


def dual_lattice(L):
    """{x : Tr(x ybar) in Z for all y in L}."""
    Ginv = mat_inv(L.gram())
    bs = L.basis
    gens = []
    for r in range(4):
        q = Quat.make(L.N)
        for c in range(4):
            if Ginv[r][c]:
                q = q + bs[c] * Ginv[r][c]
        gens.append(q)
    return QuatLattice.from_quats(gens)


def ramified_ideal(R):
    """The two-sided ideal of norm |N| of a maximal order R (its different)."""
    P = dual_lattice(R) * (-R.N)
    return P


def inverse_ideal(I):
    """I^-1 = Ibar / Norm(I) for an ideal with maximal left order."""
    return I.conj() * (1 / lattice_norm(I))


def ideal_equiv(I, J):
    """Return alpha with I = J alpha, or None.  Left orders must agree."""
    if left_order(I) != left_order(J):
        raise ValueError("ideals have different left orders")
    target = lattice_norm(I) / lattice_norm(J)
    L = inverse_ideal(J) * I
    for alpha in elements_of_norm(L, target):
        if J * alpha == I:
            return alpha
    return None


def is_principal(I):
    return ideal_equiv(I, left_order(I)) is not None


def connecting_ideal(R1, R2):
    """Lattice R1 R2 scaled to be primitive: left order R1, right order R2."""
    C = R1 * R2
    return C


# -- class sets -------------------------------------------------------------

def eichler_mass(N):
    return Fraction(-N - 1, 24)


@dataclass
class ClassSet:
    order: QuatLattice
    ideals: list
    units: list
    right_orders: list
    labels: list
    types: list = field(default_factory=list)

    @property
    def h(self):
        return len(self.ideals)

    @property
    def t(self):
        return len(self.types)

    def mass(self):
        return sum(Fraction(1, w) for w in self.units)

    def classify(self, I):
        """Index of the class of the left O-ideal I."""
        for idx, J in enumerate(self.ideals):
            if lattice_norm(J) and _quick_equiv(I, J) is not None:
                return idx
        raise LookupError("ideal not equivalent to any representative")

    def type_of(self, idx):
        for t, grp in enumerate(self.types):
            if idx in grp:
                return t
        raise LookupError(idx)


def _quick_equiv(I, J):
    target = lattice_norm(I) / lattice_norm(J)
    L = inverse_ideal(J) * I
    for alpha in elements_of_norm(L, target):
        if J * alpha == I:
            return alpha
    return None


def neighbours(O, I, p):
    """Left O-ideals J in I with Norm(J) = p Norm(I) ([I : J] = p^2)."""
    nI = lattice_norm(I)
    pI = I * p
    out = []
    seen = set()
    for c in itertools.product(range(p), repeat=4):
        if not any(c):
            continue
        x = I.element(c)
        if (x.norm() / nI) % p:
            continue
        J = QuatLattice.from_quats([o * x for o in O.basis] + pI.basis)
        if lattice_norm(J) != p * nI or J in seen:
            continue
        seen.add(J)
        out.append(J)
    return out


def class_set(O, primes=(2, 3, 5), max_ideals=200):
    """Left ideal classes of the maximal order O by neighbour search.

    Breadth first over p-neighbours, deduplicated with ideal_equiv, stopping
    as soon as the Eichler mass (|N|-1)/24 is reached.
    """
    N = O.N
    mass = eichler_mass(N)
    ideals = [O]
    units = [unit_count(O)]
    total = Fraction(1, units[0])
    for p in primes:
        if (-N) % p == 0:
            continue
        queue = list(ideals)
        while queue and total < mass:
            I = queue.pop(0)
            for J in neighbours(O, I, p):
                if any(_quick_equiv(J, K) is not None for K in ideals):
                    continue
                J = _small_representative(O, J)
                ideals.append(J)
                w = unit_count(right_order(J))
                units.append(w)
                total += Fraction(1, w)
                queue.append(J)
                if total >= mass or len(ideals) > max_ideals:
                    break
        if total >= mass:
            break
    if total != mass:
        raise RuntimeError(f"mass {total} does not reach {mass} for N={N}")
    rights = [right_order(I) for I in ideals]
    labels = ["O"] + [f"I{k}" for k in range(1, len(ideals))]
    cs = ClassSet(O, ideals, units, rights, labels)
    cs.types = type_partition(cs)
    return cs


def _small_representative(O, J):
    """An equivalent ideal J alpha of least norm, alpha in J^-1 O scaled."""
    nJ = lattice_norm(J)
    L = inverse_ideal(J)            # J * L = O, elements x of L give J x in O
    best = None
    for v, x in short_elements(L, Fraction(4) / nJ):
        cand = J * x
        n = lattice_norm(cand)
        if n.denominator == 1 and (best is None or n < best[0]):
            best = (n, cand)
    if best is None or best[0] >= nJ:
        return J
    return best[1]


def type_partition(cs):
    """Group classes whose right orders are conjugate.

    Right orders of I and J are conjugate iff J is equivalent to I or to
    I P, where P is the two-sided ideal of norm |N| of the right order of I
    (every two-sided ideal of a maximal order is principal or P times a
    principal one).
    """
    n = cs.h
    partner = []
    for idx, I in enumerate(cs.ideals):
        IP = I * ramified_ideal(cs.right_orders[idx])
        partner.append(cs.classify(IP))
    seen = set()
    groups = []
    for idx in range(n):
        if idx in seen:
            continue
        grp = sorted({idx, partner[idx]})
        seen.update(grp)
        groups.append(grp)
    return groups


def orders_conjugate(R1, R2):
    """Conjugacy of maximal orders via the connecting ideal R1 R2."""
    C = connecting_ideal(R1, R2)
    if _quick_equiv(C, R1) is not None:
        return True
    CP = C * ramified_ideal(R2)
    return _quick_equiv(CP, R1) is not None


def brandt_matrix(m, cs):
    """B[i][j] = #{alpha in I_j^-1 I_i : Norm(alpha) = m Norm(I_i)/Norm(I_j)} / |O_r(I_j)^x|."""
    h = cs.h
    norms = [lattice_norm(I) for I in cs.ideals]
    B = [[Fraction(0)] * h for _ in range(h)]
    for i in range(h):
        for j in range(h):
            L = inverse_ideal(cs.ideals[j]) * cs.ideals[i]
            target = m * norms[i] / norms[j]
            B[i][j] = Fraction(len(elements_of_norm(L, target)), cs.units[j])
    return B


# -- the embedding and the ideal I_z ---------------------------------------

def solve_embedding(N, D, bound=None):
    """Primitive (x, y, z) with x^2 + |N| y^2 = |D| z^2: least z, then y, x > 0."""
    n = -N
    bound = bound or isqrt(n * D) + 2
    for z in range(1, bound + 1):
        target = D * z * z
        y = 0
        while n * y * y <= target:
            x = is_square(target - n * y * y)
            if x is not None and y > 0 and gcd(gcd(x, y), z) == 1:
                return x, y, z
            y += 1
    raise ValueError(f"no solution with z <= {bound}")


def embedding_element(N, D):
    """v = (x i + y k)/z with Norm(v) = |D|, Tr(v) = 0 and v j = -j v."""
    x, y, z = solve_embedding(N, D)
    return Quat.make(N, 0, Fraction(x, z), 0, Fraction(y, z))


def siegel_basis(N, D, a1, b1, form, v):
    """Construction basis of I_z for z = (b1 + sqrt N)/(2 a1 |D|) and B = form."""
    a, b = form.a, form.b
    if b % 2 == 0:
        raise ValueError("form must have odd middle coefficient")
    j = Quat.make(N, 0, 0, 1, 0)
    lam = (Quat.make(N, b1) - j) * Fraction(1, 2 * a1 * D)
    w1 = lam * (v * a)
    w2 = lam * ((Quat.make(N, D) + v * b) * Fraction(1, 2))
    w3 = (v - b) * Fraction(1, 2)
    w4 = Quat.make(N, a)
    return [w1, w2, w3, w4]


def siegel_ideal(N, D, a1, b1, form, v=None):
    v = v if v is not None else embedding_element(N, D)
    return QuatLattice.from_quats(siegel_basis(N, D, a1, b1, form, v))


def r_order(N, a1, v):
    """<1, (1+j)/2, a1 v, ((1+j)/2) a1 v>."""
    h = Quat.make(N, Fraction(1, 2), 0, Fraction(1, 2), 0)
    av = v * a1
    return QuatLattice.from_quats([Quat.make(N, 1), h, av, h * av])


@dataclass(frozen=True)
class SiegelPoint:
    """(P, J, U) with P = Ps / sqrt|N| and U = Us / sqrt|N|; Ps, J, Us exact."""
    Ps: tuple
    J: tuple
    Us: tuple
    N: int

    def check(self):
        """Return a dict of exact invariant checks."""
        n = -self.N
        Ps = [list(r) for r in self.Ps]
        J = [list(r) for r in self.J]
        Us = [list(r) for r in self.Us]
        from .arith import mat_mul, transpose
        U2 = mat_mul(Us, Us)
        minusJU = [[-x for x in r] for r in mat_mul(J, Us)]
        UtJ = mat_mul(transpose(Us), J)
        return {
            "U^2=-I": all(U2[r][c] == (-n if r == c else 0) for r in range(4) for c in range(4)),
            "-JU=P": minusJU == Ps,
            "U^tJ=P": UtJ == Ps,
            "det J=1": det(J) == 1,
            "J integral": all(Fraction(x).denominator == 1 for r in J for x in r),
            "J skew": all(J[r][c] == -J[c][r] for r in range(4) for c in range(4)),
        }


def siegel_point(I, u, basis=None):
    """Siegel point of the left ideal I with complex multiplication by u."""
    if basis is None:
        basis = I.basis
    N = I.N
    if u * u != Quat.make(N, N) or u.trace() != 0:
        raise ValueError("u must satisfy u^2 = N and Tr(u) = 0")
    if not all(u * b in I for b in basis):
        raise ValueError("u is not in the left order of I")
    nI = lattice_norm(I)
    uinv = u * Fraction(1, N)
    Ps = tuple(tuple(trace_pairing(x, y) / nI for y in basis) for x in basis)
    J = tuple(tuple((uinv * x * y.conj()).trace() / nI for y in basis) for x in basis)
    # column convention: U x_k = sum_l U[l][k] x_l
    coords = _coords_in_basis(basis, [u * x for x in basis])
    Us = tuple(tuple(coords[k][l] for k in range(4)) for l in range(4))
    return SiegelPoint(Ps, J, Us, N)


def _coords_in_basis(basis, elems):
    M = [list(b.coords) for b in basis]
    Minv = mat_inv(M)
    return [[sum(e.coords[r] * Minv[r][c] for r in range(4)) for c in range(4)] for e in elems]


def expected_bilinear(N, D, a1, b1, form):
    """[[2 c1 Q, b1 I], [b1 I, 2 a1 |D| Q^-1]] with c1 = (b1^2 - N)/(4 a1 |D|)."""
    c1 = Fraction(b1 * b1 - N, 4 * a1 * D)
    Q = form.matrix()
    Qinv = mat_inv(Q)
    top = [[2 * c1 * Q[r][c] for c in range(2)] + [b1 * int(r == c) for c in range(2)] for r in range(2)]
    bot = [[b1 * int(r == c) for c in range(2)] + [2 * a1 * D * Qinv[r][c] for c in range(2)] for r in range(2)]
    return [[Fraction(x) for x in r] for r in top + bot]
