"""Intersection theory by Chern roots.

A class is a truncated polynomial in Chern-root variables.  On a space
built from Grassmannian-type factors, factor j contributes the roots
x_{j,1..k} of U_j^*; a projective space is Gr(1, n+1) and its root is the
hyperplane class.  Isotropic and bisymplectic Grassmannians, quadrics and
hypersurface sections are zero loci of regular sections of a bundle N on
a product of Grassmannians Y, so for a class phi pulled back from Y

    int_X phi = int_Y phi * c_top(N),     T_X = T_Y - N.

Integration over Gr(k, n) uses the Vandermonde formula

    int phi = (1/k!) [x_1^{n-1} ... x_k^{n-1}] phi * prod_{i != j} (x_i - x_j).

A formal space carries independent roots for abstract bundles (E, F, ...)
and lines (L, ...); results are converted to elementary symmetric
functions with sympy.
"""
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product as iproduct
from math import factorial, lcm

import numpy as np
import sympy

from . import _kernels as K
from .bundles import (CharacterEnv, Generator, character, rank)
from .partitions import Partition, partitions_of
from .spaces import SpaceDescriptor, parse_space


class ChowError(ValueError):
    pass


class Unsupported(ChowError):
    pass


# ------------------------------------------------------------------ spaces

class ChowSpace:
    """Root-variable model of a space (concrete or formal)."""

    def __init__(self, nvars, maxdeg, var_names, env, dim,
                 int_factors=(), normal=None, tangent=None, descriptor=None):
        self.nvars = nvars
        self.maxdeg = maxdeg
        self.var_names = tuple(var_names)
        self.env = env
        self.dim = dim
        self.int_factors = tuple(int_factors)   # (k, n, first_var)
        self.normal = normal if normal is not None else Counter()
        self.tangent = tangent
        self.descriptor = descriptor

    @property
    def formal(self):
        return self.descriptor is None

    def one(self):
        return ChowClass.constant(self, 1)

    def zero(self):
        return ChowClass.constant(self, 0)

    def var(self, i):
        c = self.zero()
        e = [0] * self.nvars
        e[i] = 1
        c.coeffs[K.monomial_index(self.nvars, self.maxdeg)[tuple(e)]] = 1
        return c

    def linear(self, weight):
        out = self.zero()
        idx = K.monomial_index(self.nvars, self.maxdeg)
        for v, c in enumerate(weight):
            if c:
                e = [0] * self.nvars
                e[v] = 1
                out.coeffs[idx[tuple(e)]] += c
        return out

    def hyperplane(self, j):
        return self.linear(self.env.lines[f"h{j}"])

    def __repr__(self):
        return f"ChowSpace({self.descriptor if self.descriptor else 'formal'})"


@lru_cache(maxsize=None)
def chow_space(space):
    """Root model of a catalogued space (descriptor or its text)."""
    if isinstance(space, str):
        space = parse_space(space)
    if not isinstance(space, SpaceDescriptor):
        raise ChowError(f"not a space: {space!r}")
    nvars = sum(f.k for f in space.factors)
    maxdeg = sum(f.grass_dim for f in space.factors)
    names = []
    gens, lines = {}, {}
    int_factors = []
    normal = Counter()
    tangent = Counter()
    pos = 0

    def unit(v, c=1):
        w = [0] * nvars
        w[v] = c
        return tuple(w)

    def add(u, v, c=1):
        return tuple(a + c * b for a, b in zip(u, v))

    zero = tuple([0] * nvars)
    for j, f in enumerate(space.factors, start=1):
        roots = [unit(pos + i) for i in range(f.k)]
        for i in range(f.k):
            names.append(f"x{j}_{i + 1}" if f.k > 1 else f"h{j}")
        h = zero
        for r in roots:
            h = add(h, r)
        lines[f"h{j}"] = h
        u = Counter({tuple(-a for a in r): 1 for r in roots})
        # U has roots -x; several equal roots cannot occur (distinct variables)
        gens[f"U{j}"] = u
        q = Counter({zero: f.n})
        for w, m in u.items():
            q[w] -= m
        gens[f"Q{j}"] = Counter({w: m for w, m in q.items() if m})
        # T_Gr = U^* (x) Q
        for r in roots:
            for w, m in gens[f"Q{j}"].items():
                tangent[add(r, w)] += m
        wedge2 = Counter(add(a, b) for a, b in combinations(roots, 2))
        if f.kind == "IGr":
            normal.update(wedge2)
        elif f.kind == "I2Gr":
            normal.update(wedge2)
            normal.update(wedge2)
        elif f.kind == "Quadric":
            normal[add(zero, h, 2)] += 1
        int_factors.append((f.k, f.n, pos))
        pos += f.k
    for s in space.slices:
        w = zero
        for j, a in enumerate(s, start=1):
            w = add(w, lines[f"h{j}"], a)
        normal[w] += 1
    for w, m in normal.items():
        tangent[w] -= m
    tangent = Counter({w: m for w, m in tangent.items() if m and any(w)})
    env = CharacterEnv(nvars, gens, lines)
    return ChowSpace(nvars, maxdeg, names, env, space.dim, int_factors,
                     normal, tangent, space)


def formal_space(generators, lines=(), maxdeg=None):
    """Pseudo-space with independent roots for abstract bundles and lines.

    ``generators`` maps names to ranks, e.g. {"E": 5}; ``lines`` lists line
    names.  Variables are E1..E5 for the roots of E and the lowercase line
    name for a line.
    """
    gens = dict(generators)
    total = sum(gens.values()) + len(lines)
    if maxdeg is None:
        maxdeg = total
    names = []
    gen_chars = {}
    line_w = {}
    pos = 0
    for g in sorted(gens):
        ch = Counter()
        for i in range(gens[g]):
            w = [0] * total
            w[pos] = 1
            ch[tuple(w)] += 1
            names.append(f"{g}{i + 1}")
            pos += 1
        gen_chars[g] = ch
    for name in lines:
        w = [0] * total
        w[pos] = 1
        line_w[name] = tuple(w)
        names.append(name.lower())
        pos += 1
    env = CharacterEnv(total, gen_chars, line_w)
    return ChowSpace(total, maxdeg, names, env, dim=maxdeg)


# ------------------------------------------------------------------ classes

def _int_scale(arr):
    if Fraction not in set(map(type, arr)):
        return arr, 1
    den = 1
    for x in arr:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return np.array([int(x * den) for x in arr], dtype=object), den


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class ChowClass:
    """Truncated polynomial in the root variables of a ChowSpace."""

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = np.asarray(coeffs, dtype=object)

    @classmethod
    def constant(cls, space, c):
        exps, _ = K.monomial_basis(space.nvars, space.maxdeg)
        arr = np.zeros(len(exps), dtype=object)
        arr[0] = c
        return cls(space, arr)

    def copy(self):
        return ChowClass(self.space, self.coeffs.copy())

    def _check(self, other):
        if not isinstance(other, ChowClass) or other.space is not self.space:
            raise ChowError("classes live on different spaces")

    def __add__(self, other):
        if not isinstance(other, ChowClass):
            other = ChowClass.constant(self.space, other)
        self._check(other)
        return ChowClass(self.space, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.space, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ChowClass):
            return ChowClass(self.space, self.coeffs * _frac_or_int(other))
        self._check(other)
        a, da = _int_scale(self.coeffs)
        b, db = _int_scale(other.coeffs)
        out = K.product(a, b, self.space.nvars, self.space.maxdeg)
        if da * db != 1:
            out = np.array([_normalize(Fraction(x, da * db)) for x in out], dtype=object)
        return ChowClass(self.space, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.space.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_linear(self, weight):
        return ChowClass(self.space, K.multiply_linear(
            self.coeffs, weight, self.space.nvars, self.space.maxdeg))

    def div_one_plus_linear(self, weight, power=1):
        return ChowClass(self.space, K.divide_one_plus_linear(
            self.coeffs, weight, self.space.nvars, self.space.maxdeg, power))

    def part(self, d):
        """Homogeneous component of degree d (same ambient vector)."""
        _, offsets = K.monomial_basis(self.space.nvars, self.space.maxdeg)
        out = np.zeros(len(self.coeffs), dtype=object)
        if 0 <= d <= self.space.maxdeg:
            out[offsets[d]:offsets[d + 1]] = self.coeffs[offsets[d]:offsets[d + 1]]
        return ChowClass(self.space, out)

    def truncate(self, d):
        _, offsets = K.monomial_basis(self.space.nvars, self.space.maxdeg)
        out = self.coeffs.copy()
        if d + 1 < len(offsets):
            out[offsets[d + 1]:] = 0
        return ChowClass(self.space, out)

    def is_zero(self):
        return all(x == 0 for x in self.coeffs)

    def terms(self, d=None):
        """{exponent tuple: coefficient} of the nonzero terms (degree d)."""
        exps, offsets = K.monomial_basis(self.space.nvars, self.space.maxdeg)
        lo, hi = (0, len(exps)) if d is None else (offsets[d], offsets[d + 1])
        return {tuple(int(x) for x in exps[i]): _normalize(self.coeffs[i])
                for i in range(lo, hi) if self.coeffs[i] != 0}

    def components(self):
        """Per-codimension term dictionaries up to the dimension of the space."""
        top = min(self.space.dim, self.space.maxdeg)
        return [self.terms(d) for d in range(top + 1)]

    def to_sympy(self, d=None):
        syms = sympy.symbols(self.space.var_names)
        expr = sympy.Integer(0)
        for e, c in self.terms(d).items():
            term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
            for s, k in zip(syms, e):
                if k:
                    term *= s ** k
            expr += term
        return expr

    def integrate(self):
        return integrate(self)

    def __eq__(self, other):
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.space is other.space and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"ChowClass({self.to_sympy()})"


def _frac_or_int(c):
    if isinstance(c, (int, Fraction)):
        return c
    return Fraction(c)


# ------------------------------------------------------------ Chern classes

def _char_on(e, space):
    if isinstance(e, Counter):
        return e
    return character(e, space.env)


def chern_class(e, space):
    """Total Chern class c(e) = prod (1 + w)^m over the weights."""
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    out = space.one()
    for w, m in sorted(_char_on(e, space).items()):
        if not any(w):
            continue
        if m > 0:
            for _ in range(m):
                out = out + out.mul_linear(w)
        else:
            out = out.div_one_plus_linear(w, -m)
    return out


def top_chern_class(e, space):
    """c_rank(e) for an honest bundle: the product of its weights."""
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    ch = _char_on(e, space)
    if any(m < 0 for m in ch.values()):
        raise ChowError("top Chern class of a virtual bundle")
    out = space.one()
    for w, m in sorted(ch.items()):
        for _ in range(m):
            out = out.mul_linear(w)
    return out


def power_sums(ch, space, top):
    """[p_0, ..., p_top] with p_j = sum_w m_w w^j."""
    sums = [space.zero() for _ in range(top + 1)]
    for w, m in sorted(ch.items()):
        p = space.one()
        sums[0] = sums[0] + m
        for j in range(1, top + 1):
            p = p.mul_linear(w)
            sums[j] = sums[j] + p * m
    return sums


def chern_character(e, space):
    """ch(e) = sum_w m_w exp(w), truncated at the space's top degree."""
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    top = space.maxdeg
    p = power_sums(_char_on(e, space), space, top)
    out = space.zero()
    for j in range(top + 1):
        out = out + p[j] * Fraction(1, factorial(j))
    return out


@lru_cache(maxsize=None)
def _log_todd_coeffs(top):
    x = sympy.Symbol("x")
    ser = sympy.series(sympy.log(x / (1 - sympy.exp(-x))), x, 0, top + 1).removeO()
    return [Fraction(int(sympy.Rational(ser.coeff(x, j)).p), int(sympy.Rational(ser.coeff(x, j)).q))
            for j in range(top + 1)]


def _exp_class(s, top):
    """exp(s) for s without constant term."""
    out = s.space.one()
    term = s.space.one()
    for k in range(1, top + 1):
        term = term * s * Fraction(1, k)
        out = out + term
    return out


def todd_class(e, space):
    """td(e) = exp(sum_j a_j p_j) with a_j the coefficients of log(x / (1 - e^-x))."""
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    top = space.maxdeg
    a = _log_todd_coeffs(top)
    p = power_sums(_char_on(e, space), space, top)
    s = space.zero()
    for j in range(1, top + 1):
        if a[j]:
            s = s + p[j] * a[j]
    return _exp_class(s, top)


# ------------------------------------------------------------ integration

@lru_cache(maxsize=None)
def _vandermonde_terms(k):
    xs = sympy.symbols(f"v0:{k}")
    expr = sympy.Integer(1)
    for i in range(k):
        for j in range(k):
            if i != j:
                expr *= xs[i] - xs[j]
    poly = sympy.Poly(sympy.expand(expr), *xs) if k > 1 else sympy.Poly(sympy.Integer(1), *xs)
    return tuple((tuple(int(a) for a in mon), int(c)) for mon, c in poly.terms())


def integrate(c):
    """Degree of the dimension-dim(X) part of ``c`` on a concrete space."""
    space = c.space
    if space.formal:
        raise ChowError("integration needs a concrete space")
    top = c.part(space.dim)
    for w, m in sorted(space.normal.items()):
        for _ in range(m):
            top = top.mul_linear(w)
    terms = top.terms(space.maxdeg)
    if not terms:
        return 0
    per_factor = []
    target = [0] * space.nvars
    denom = 1
    for k, n, first in space.int_factors:
        per_factor.append((first, _vandermonde_terms(k)))
        for i in range(k):
            target[first + i] = n - 1
        denom *= factorial(k)
    total = Fraction(0)
    for combo in iproduct(*[vt for _, vt in per_factor]):
        need = list(target)
        coef = 1
        for (first, _), (mon, cv) in zip(per_factor, combo):
            coef *= cv
            for i, a in enumerate(mon):
                need[first + i] -= a
        if min(need) < 0:
            continue
        val = terms.get(tuple(need))
        if val:
            total += coef * Fraction(val)
    total /= denom
    return int(total) if total.denominator == 1 else total


def tangent_character(space):
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    if space.tangent is None:
        raise ChowError("formal spaces have no tangent bundle")
    return space.tangent


def euler_characteristic(space):
    """Topological Euler characteristic int c_top(T_X)."""
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    return integrate(chern_class(space.tangent, space))


def euler_char_zero_locus(space, f):
    """chi_top of the zero locus Z of a general section of ``f``.

    chi(Z) = int_X c_top(f) c(T_X) / c(f), all in exact truncated series.
    """
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    ch = _char_on(f, space)
    r = sum(ch.values())
    if r > space.dim:
        raise ChowError(f"rank {r} exceeds dim {space.dim}")
    cls = top_chern_class(ch, space)
    for w, m in sorted(space.tangent.items()):
        if m > 0:
            for _ in range(m):
                cls = cls + cls.mul_linear(w)
        else:
            cls = cls.div_one_plus_linear(w, -m)
    for w, m in sorted(ch.items()):
        if any(w):
            cls = cls.div_one_plus_linear(w, m)
    return integrate(cls)


def holomorphic_euler_char_zero_locus(space, f):
    """chi(Z, O_Z) for the zero locus Z of a general section of ``f``.

    Koszul plus HRR collapse to int_X c_top(f) td(T_X) / td(f).
    """
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    ch = _char_on(f, space)
    if sum(ch.values()) > space.dim:
        raise ChowError(f"rank {sum(ch.values())} exceeds dim {space.dim}")
    virtual = Counter(space.tangent)
    virtual.subtract(ch)
    virtual = Counter({w: m for w, m in virtual.items() if m and any(w)})
    return integrate(top_chern_class(ch, space) * todd_class(virtual, space))


def hrr_euler_characteristic(e, space):
    """chi(X, e) = int ch(e) td(T_X)."""
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    return integrate(chern_character(e, space) * todd_class(space.tangent, space))


# ------------------------------------------------------------ ring presentations

def _complete_homogeneous(space, first, k, j):
    out = space.zero()
    if j < 0:
        return out
    idx = K.monomial_index(space.nvars, space.maxdeg)
    from itertools import combinations_with_replacement
    for combo in combinations_with_replacement(range(k), j):
        e = [0] * space.nvars
        for v in combo:
            e[first + v] += 1
        out.coeffs[idx[tuple(e)]] += 1
    return out


def schur_polynomial(space, first, k, lam):
    """s_lam(x_first, ..., x_{first+k-1}) by Jacobi-Trudi."""
    lam = Partition(lam)
    if len(lam) > k:
        return space.zero()
    n = len(lam)
    if n == 0:
        return space.one()
    h = {}
    total = space.zero()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = space.one()
        for i in range(n):
            d = lam[i] - i + perm[i]
            if d < 0:
                term = None
                break
            if d not in h:
                h[d] = _complete_homogeneous(space, first, k, d)
            term = term * h[d]
        if term is not None:
            total = total + term * sign
    return total


class RingPresentation:
    def __init__(self, space, basis):
        self.space = space
        self.basis = basis          # list per degree of (label, ChowClass)

    @property
    def betti(self):
        return [len(b) for b in self.basis]

    def pairing_matrix(self, d):
        left = self.basis[d]
        right = self.basis[self.space.dim - d]
        return sympy.Matrix([[sympy.Rational(str(integrate(a * b))) for _, b in right]
                             for _, a in left])

    def is_unimodular(self):
        for d in range(self.space.dim + 1):
            m = self.pairing_matrix(d)
            if m.shape[0] != m.shape[1] or abs(m.det()) != 1:
                return False
        return True


def _factor_basis(space, factor, first, j):
    """(label, class) pairs per degree for a single factor."""
    kind = factor.kind
    if kind in ("P", "Gr"):
        k, n = factor.k, factor.n
        out = [[] for _ in range(k * (n - k) + 1)]
        for d in range(k * (n - k) + 1):
            for lam in partitions_of(d, max_part=n - k, max_len=k):
                out[d].append((f"s{tuple(lam)}", schur_polynomial(space, first, k, lam)))
        return out
    odd_quadric = (kind == "Quadric" and factor.dim % 2 == 1) or \
        (kind == "IGr" and (factor.k, factor.n) == (2, 4))
    if odd_quadric:
        m = factor.dim
        h = space.hyperplane(j)
        out = []
        for d in range(m + 1):
            cls = h ** d
            if 2 * d > m:
                out.append([(f"h^{d}/2", cls * Fraction(1, 2))])
            else:
                out.append([(f"h^{d}", cls)])
        return out
    raise Unsupported(f"no Chow basis for {factor}")


def chow_ring(space):
    """Graded basis with its top-degree pairing.

    Supported: products of projective spaces, Grassmannians, odd quadrics
    and IGr(2,4) (a three-dimensional quadric), without hypersurface slices.
    """
    if isinstance(space, str):
        space = parse_space(space)
    if space.slices:
        raise Unsupported("Chow ring presentation of sliced spaces")
    cs = chow_space(space)
    per = [_factor_basis(cs, f, first, j)
           for j, (f, (_, _, first)) in enumerate(zip(space.factors, cs.int_factors), start=1)]
    basis = [[] for _ in range(space.dim + 1)]
    for degs in iproduct(*[range(len(b)) for b in per]):
        d = sum(degs)
        for items in iproduct(*[b[dd] for b, dd in zip(per, degs)]):
            label = "*".join(lbl for lbl, _ in items)
            cls = cs.one()
            for _, c in items:
                cls = cls * c
            basis[d].append((label, cls))
    return RingPresentation(cs, basis)


# ------------------------------------------------------------ degeneracy loci

def alternating_chern_character(terms, space):
    """sum_i (-1)^i ch(F_i) for a list of bundle expressions F_0, F_1, ..."""
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    total = Counter()
    for i, term in enumerate(terms):
        ch = _char_on(term, space)
        for w, m in ch.items():
            total[w] += (-1) ** i * m
    total = Counter({w: m for w, m in total.items() if m})
    return chern_character(total, space)


def degeneracy_class(terms, space, codim=None):
    """Codim-c component of the alternating Chern character of a locally
    free resolution F_0 <- F_1 <- ... <- F_c of O_D.

    Raises if a component below degree c is nonzero, which signals a
    broken relative instance.
    """
    if isinstance(space, (str, SpaceDescriptor)):
        space = chow_space(space)
    if codim is None:
        codim = len(terms) - 1
    ch = alternating_chern_character(terms, space)
    for d in range(codim):
        if not ch.part(d).is_zero():
            raise ChowError(f"alternating Chern character has a degree {d} component")
    return ch.part(codim)


def to_elementary(cls, d=None, symbols=None):
    """Rewrite a symmetric class in elementary symmetric functions.

    Each abstract generator G of rank r in a formal space becomes
    g_1..g_r (lowercase), e.g. e1..e5 for E; lines stay as their variable.
    """
    space = cls.space
    expr = cls.to_sympy(d)
    groups = {}
    for name in space.var_names:
        head = name.rstrip("0123456789")
        if head != name:
            groups.setdefault(head, []).append(name)
    for head, names in sorted(groups.items()):
        syms = sympy.symbols(names)
        if len(syms) == 1:
            expr = expr.subs(syms[0], sympy.Symbol(f"{head.lower()}1"))
            continue
        sym_expr, rem, defs = sympy.polys.polyfuncs.symmetrize(
            sympy.expand(expr), *syms, formal=True,
            symbols=sympy.symbols(f"{head.lower()}1:{len(syms) + 1}"))
        if rem != 0:
            raise ChowError(f"class is not symmetric in the roots of {head}")
        expr = sym_expr
    return sympy.expand(expr)


def porteous_class(space, e_name, f_name, r):
    """Thom-Porteous class of {rank phi <= r} for phi: E -> F on a formal space.

    det[c_{f-r+j-i}(F - E)] of size (e - r).
    """
    ranks = {n: sum(space.env.gens[n].values()) for n in (e_name, f_name)}
    e, f = ranks[e_name], ranks[f_name]
    virtual = Counter(space.env.gens[f_name])
    for w, m in space.env.gens[e_name].items():
        virtual[w] -= m
    c = chern_class(Counter({w: m for w, m in virtual.items() if m}), space)
    comps = {}
    size = e - r

    def entry(k):
        if k < 0:
            return space.zero()
        if k not in comps:
            comps[k] = c.part(k)
        return comps[k]

    total = space.zero()
    for perm in permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        term = space.one()
        for i in range(size):
            term = term * entry(f - r + perm[i] - i)
        total = total + term * sign
    return total.part((e - r) * (f - r))


def kempf_pushforward(space, e_name, f_name, r):
    """Gysin pushforward along Gr(e - r, E) -> X of c_top(K^* (x) F).

    This resolves {rank phi <= r} by the kernel K; evaluated by
    localization and simplified with sympy.
    """
    syms = sympy.symbols(space.var_names)
    roots = {}
    for name in (e_name, f_name):
        idx = []
        for w in sorted(space.env.gens[name]):
            idx.append(next(i for i, a in enumerate(w) if a))
        roots[name] = [syms[i] for i in idx]
    z, fr = roots[e_name], roots[f_name]
    e = len(z)
    m = e - r
    total = sympy.Integer(0)
    for subset in combinations(range(e), m):
        num = sympy.Integer(1)
        for i in subset:
            for fb in fr:
                num *= fb - z[i]
        den = sympy.Integer(1)
        for i in subset:
            for j in range(e):
                if j not in subset:
                    den *= z[j] - z[i]
        total += num / den
    return sympy.expand(sympy.cancel(sympy.together(total)))


# ------------------------------------------------------------ Porteous oracle

def _porteous_at(zspace, fvals, e, f, r):
    """det[c_{f-r+j-i}(F - E)] with numeric F-roots and symbolic E-roots.

    ``zspace`` is a formal space whose variables are the roots of E.
    """
    top = (e - r) + (f - r) - 1
    # h_j(-z): the components of 1 / c(E)
    inv = zspace.one()
    for w in sorted(zspace.env.gens["E"]):
        inv = inv.div_one_plus_linear(w)
    cf = [1]
    for v in fvals:
        cf = [a + v * b for a, b in zip(cf + [0], [0] + cf)]
    parts = [inv.part(d) for d in range(top + 1)]
    comps = []
    for k in range(top + 1):
        c = zspace.zero()
        for a in range(min(k, f) + 1):
            if cf[a]:
                c = c + parts[k - a] * cf[a]
        comps.append(c)
    n = e - r
    nvars, maxdeg = zspace.nvars, zspace.maxdeg
    raw = [K.as_int64_or_object(c.coeffs) for c in comps]
    one = K.as_int64_or_object(zspace.one().coeffs)
    zero = np.zeros_like(one)

    def entry(k):
        return raw[k] if 0 <= k <= top and np.any(raw[k] != 0) else None

    matrix = [[entry(f - r + j - i) for j in range(n)] for i in range(n)]
    memo = {}

    def minor(row, cols):
        if row == n:
            return one
        key = (row, cols)
        if key not in memo:
            total = zero
            for pos, col in enumerate(cols):
                if matrix[row][col] is not None:
                    term = K.product_raw(matrix[row][col],
                                         minor(row + 1, cols[:pos] + cols[pos + 1:]),
                                         nvars, maxdeg)
                    total = K.add_exact(total, term if pos % 2 == 0 else -term)
            memo[key] = total
        return memo[key]

    return ChowClass(zspace, np.asarray(minor(0, tuple(range(n))), dtype=object))


def _kempf_at(R, z, fvals, e, r):
    """Localization sum over kernels K in Gr(e - r, E), cleared by the Vandermonde."""
    m = e - r
    subsets = list(combinations(range(e), m))
    if len(subsets) == 1:
        # K = E: the class is the top Chern class of E^* (x) F
        total = R(1)
        for i in range(e):
            for v in fvals:
                total *= R(v) - z[i]
        return total
    total = R(0)
    for subset in subsets:
        num = R(1)
        for i in subset:
            for v in fvals:
                num *= R(v) - z[i]
        # Vandermonde divided by the tangent weights, written out directly
        cofactor = R(1)
        for i in range(e):
            for j in range(i + 1, e):
                if (i in subset) == (j in subset):
                    cofactor *= z[i] - z[j]
                elif i in subset:
                    cofactor = -cofactor
        total += num * cofactor
    vander = R(1)
    for i in range(e):
        for j in range(i + 1, e):
            vander *= z[i] - z[j]
    return total.exquo(vander)


def porteous_oracle(e, f, r):
    """Check the Thom-Porteous determinant against the Kempf pushforward.

    Both sides are symmetric in the roots of F with degree at most e - r in
    each, so equality on all multisets of F-roots drawn from {0, ..., e - r}
    proves the identity; the roots of E stay symbolic throughout.
    """
    from itertools import combinations_with_replacement
    from sympy import ZZ
    from sympy.polys.rings import ring
    if not (0 <= r < min(e, f)):
        raise ChowError("need 0 <= r < min(e, f)")
    R, *z = ring(",".join(f"z{i}" for i in range(e)), ZZ)
    zspace = formal_space({"E": e}, maxdeg=(e - r) * (f - r))
    points = list(combinations_with_replacement(range(e - r + 1), f))
    for fvals in points:
        lhs = _porteous_at(zspace, fvals, e, f, r).terms()
        rhs = {tuple(mon): int(c) for mon, c in _kempf_at(R, z, fvals, e, r).items()}
        if lhs != rhs:
            return {"e": e, "f": f, "r": r, "pass": False, "witness": list(fvals)}
    return {"e": e, "f": f, "r": r, "pass": True, "points": len(points)}
