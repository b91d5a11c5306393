"""Symbolic vector bundles.

Expressions are immutable trees over named generators.  Two evaluations are
provided and tested against each other:

* closed-form ``rank`` / ``det_expr`` rules, and
* torus characters (``character``): a bundle becomes a multiset of weights
  in a space of Chern-root variables, i.e. the splitting principle.

Line bundles are ``LineClass`` exponent vectors.  Keys are line generator
names (``"L"``), hyperplane classes (``"h1"``) or determinant symbols of
rank-r generators (``"det E"``).

s-expression grammar (used by the CLI)::

    (gen E 5)            abstract generator E of rank 5
    (line L)             line generator L
    (trivial 2)          trivial bundle of rank 2
    (O 1 0 0)            O(1,0,0) on a three-factor product
    U  Q  U2  Q1         tautological bundles of the ambient space
    (dual X) (sum X Y ..) (tensor X Y ..)
    (wedge k X) (sym k X) (schur (2 1) X)
    (twist X (L 1) (det E -2))
    (minus X Y)          virtual difference, e.g. a kernel
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import prod
import re

from .partitions import Partition, binomial, conjugate, schur_dim


class BundleError(ValueError):
    pass


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class LineClass:
    """Exponent vector of a line bundle; addition is tensor product."""

    __slots__ = ("_items",)

    def __init__(self, exponents=None, **kw):
        data = dict(exponents or {})
        data.update(kw)
        items = tuple(sorted((str(k), _frac(v)) for k, v in data.items() if v != 0))
        object.__setattr__(self, "_items", items)

    def __setattr__(self, key, value):
        raise AttributeError("LineClass is immutable")

    @property
    def exponents(self):
        return dict(self._items)

    def get(self, key):
        return dict(self._items).get(key, Fraction(0))

    def __add__(self, other):
        out = dict(self._items)
        for k, v in other._items:
            out[k] = out.get(k, 0) + v
        return LineClass(out)

    def __neg__(self):
        return LineClass({k: -v for k, v in self._items})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = _frac(c)
        return LineClass({k: c * v for k, v in self._items})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LineClass) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def is_trivial(self):
        return not self._items

    def substitute(self, rules):
        """Replace keys by LineClass-like dicts, e.g. {"det U1": {"h1": -1}}."""
        out = LineClass()
        for k, v in self._items:
            if k in rules:
                out = out + LineClass(rules[k]) * v
            else:
                out = out + LineClass({k: v})
        return out

    def to_json(self):
        return {k: (int(v) if v.denominator == 1 else str(v)) for k, v in self._items}

    def __repr__(self):
        if not self._items:
            return "O"
        return " ".join(f"{k}^{v}" for k, v in self._items)


# ---------------------------------------------------------------- nodes

@dataclass(frozen=True)
class Generator:
    name: str
    rank: int


@dataclass(frozen=True)
class LineGen:
    name: str


@dataclass(frozen=True)
class Dual:
    child: object


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Tensor:
    children: tuple


@dataclass(frozen=True)
class Wedge:
    k: int
    child: object


@dataclass(frozen=True)
class Sym:
    k: int
    child: object


@dataclass(frozen=True)
class Schur:
    lam: Partition
    child: object


@dataclass(frozen=True)
class Twist:
    child: object
    line: LineClass


@dataclass(frozen=True)
class Diff:
    """Virtual difference plus - minus, e.g. a kernel of a surjection."""
    plus: object
    minus: object


TRIVIAL_NAME = "O"


def trivial(r=1):
    return Generator(TRIVIAL_NAME, r)


def line_bundle(line):
    """The line bundle with exponent vector ``line``."""
    if not isinstance(line, LineClass):
        line = LineClass(line)
    return Twist(trivial(1), line)


def direct_sum(*items):
    return Sum(tuple(items))


def tensor(*items):
    return Tensor(tuple(items))


def wedge(k, e):
    return Wedge(int(k), e)


def sym(k, e):
    return Sym(int(k), e)


def schur(lam, e):
    return Schur(Partition(lam), e)


def twist(e, line):
    if not isinstance(line, LineClass):
        line = LineClass(line)
    return Twist(e, line)


def dual(e):
    return Dual(e)


def difference(plus, minus):
    return Diff(plus, minus)


# ------------------------------------------------------ rank / det

def rank(e):
    if isinstance(e, Generator):
        return e.rank
    if isinstance(e, LineGen):
        return 1
    if isinstance(e, Dual):
        return rank(e.child)
    if isinstance(e, Sum):
        return sum(rank(c) for c in e.children)
    if isinstance(e, Tensor):
        return prod(rank(c) for c in e.children)
    if isinstance(e, Wedge):
        return binomial(rank(e.child), e.k)
    if isinstance(e, Sym):
        return binomial(rank(e.child) + e.k - 1, e.k)
    if isinstance(e, Schur):
        return schur_dim(e.lam, rank(e.child))
    if isinstance(e, Twist):
        return rank(e.child)
    if isinstance(e, Diff):
        return rank(e.plus) - rank(e.minus)
    raise BundleError(f"not a bundle expression: {e!r}")


def _schur_det_exponent(lam, r):
    if r == 0:
        return Fraction(0)
    num = lam.size * schur_dim(lam, r)
    if num % r:
        raise BundleError(f"det S_{tuple(lam)} of a rank {r} bundle is not an integral power")
    return Fraction(num // r)


def det_expr(e):
    """Determinant line class by the closed-form rules.

    >>> det_expr(wedge(3, Generator("E", 8)))
    det E^21
    """
    if isinstance(e, Generator):
        if e.name == TRIVIAL_NAME or e.rank == 0:
            return LineClass()
        return LineClass({f"det {e.name}": 1})
    if isinstance(e, LineGen):
        return LineClass({e.name: 1})
    if isinstance(e, Dual):
        return -det_expr(e.child)
    if isinstance(e, Sum):
        out = LineClass()
        for c in e.children:
            out = out + det_expr(c)
        return out
    if isinstance(e, Tensor):
        ranks = [rank(c) for c in e.children]
        out = LineClass()
        for i, c in enumerate(e.children):
            others = prod(r for j, r in enumerate(ranks) if j != i)
            out = out + det_expr(c) * others
        return out
    if isinstance(e, Wedge):
        r = rank(e.child)
        if e.k == 0 or e.k > r:
            return LineClass()
        return det_expr(e.child) * binomial(r - 1, e.k - 1)
    if isinstance(e, Sym):
        return det_expr(e.child) * _schur_det_exponent(Partition((e.k,)), rank(e.child))
    if isinstance(e, Schur):
        return det_expr(e.child) * _schur_det_exponent(e.lam, rank(e.child))
    if isinstance(e, Twist):
        return det_expr(e.child) + e.line * rank(e.child)
    if isinstance(e, Diff):
        return det_expr(e.plus) - det_expr(e.minus)
    raise BundleError(f"not a bundle expression: {e!r}")


# ------------------------------------------------------- canonical form

def _key(e):
    return repr(e)


def canonical(e):
    """Duals pushed to the leaves, sums and tensors flattened and sorted,
    nested twists merged, trivial twists dropped."""
    return _canon(e, False)


def _canon(e, dualize):
    if isinstance(e, Generator):
        if e.name == TRIVIAL_NAME:
            return e
        return Dual(e) if dualize else e
    if isinstance(e, LineGen):
        return Twist(trivial(1), LineClass({e.name: -1 if dualize else 1}))
    if isinstance(e, Dual):
        return _canon(e.child, not dualize)
    if isinstance(e, (Sum, Tensor)):
        kind = type(e)
        flat = []
        for c in e.children:
            cc = _canon(c, dualize)
            if isinstance(cc, kind):
                flat.extend(cc.children)
            else:
                flat.append(cc)
        if kind is Tensor:
            flat = [c for c in flat if c != trivial(1)] or [trivial(1)]
            lines = [c for c in flat if isinstance(c, Twist) and c.child == trivial(1)]
            if lines and len(flat) > 1:
                rest = [c for c in flat if not (isinstance(c, Twist) and c.child == trivial(1))]
                total = LineClass()
                for c in lines:
                    total = total + c.line
                inner = rest[0] if len(rest) == 1 else Tensor(tuple(sorted(rest, key=_key)))
                return _canon(Twist(inner, total), False)
        if len(flat) == 1:
            return flat[0]
        return kind(tuple(sorted(flat, key=_key)))
    if isinstance(e, Wedge):
        return Wedge(e.k, _canon(e.child, dualize))
    if isinstance(e, Sym):
        return Sym(e.k, _canon(e.child, dualize))
    if isinstance(e, Schur):
        return Schur(e.lam, _canon(e.child, dualize))
    if isinstance(e, Twist):
        child = _canon(e.child, dualize)
        line = -e.line if dualize else e.line
        if isinstance(child, Twist):
            line = line + child.line
            child = child.child
        if line.is_trivial():
            return child
        return Twist(child, line)
    if isinstance(e, Diff):
        return Diff(_canon(e.plus, dualize), _canon(e.minus, dualize))
    raise BundleError(f"not a bundle expression: {e!r}")


def equivalent(a, b):
    return canonical(a) == canonical(b)


# ------------------------------------------------------- spinor bundles

def spinor_bundle(E, L, parity="+", e=None):
    """Half-spin bundle of the split quadratic bundle E + E^* (x) L.

    S_+ = sum_k wedge^{2k} E (x) L^{e_+ - k},
    S_- = sum_k wedge^{2k+1} E (x) L^{e_- - k},
    with e_+ = floor(e/2) and e_- = floor((e-1)/2).
    """
    if e is None:
        e = rank(E)
    if not isinstance(L, LineClass):
        L = LineClass({L: 1}) if isinstance(L, str) else LineClass(L)
    if parity in ("+", 1, "plus"):
        top, start = e // 2, 0
    elif parity in ("-", -1, "minus"):
        top, start = (e - 1) // 2, 1
    else:
        raise BundleError(f"parity must be + or -, not {parity!r}")
    terms = []
    k = 0
    while start + 2 * k <= e:
        deg = start + 2 * k
        base = trivial(1) if deg == 0 else wedge(deg, E)
        line = L * (top - k)
        terms.append(base if line.is_trivial() else Twist(base, line))
        k += 1
    return Sum(tuple(terms))


def quadratic_split(E, L):
    """V = E + E^* (x) L."""
    if not isinstance(L, LineClass):
        L = LineClass({L: 1})
    return Sum((E, Twist(Dual(E), L)))


# ------------------------------------------------------- characters

def _wadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _wscale(u, c):
    return tuple(_norm(c * a) for a in u)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def char_add(a, b, sign=1):
    out = Counter(a)
    for w, m in b.items():
        out[w] += sign * m
    return Counter({w: m for w, m in out.items() if m})


def char_mul(a, b):
    out = Counter()
    for wa, ma in a.items():
        for wb, mb in b.items():
            out[_wadd(wa, wb)] += ma * mb
    return Counter({w: m for w, m in out.items() if m})


def _gen_binom(m, i):
    # binomial(m, i) for any integer m
    num = 1
    for t in range(i):
        num *= m - t
    den = 1
    for t in range(1, i + 1):
        den *= t
    return num // den


def _graded_powers(ch, kmax, exterior):
    """[lambda^0 .. lambda^kmax] or [sigma^0 .. sigma^kmax] of a character.

    Uses multiplicativity of lambda_t / sigma_t over the weights, so
    virtual characters (negative multiplicities) are handled too.
    """
    nv = len(next(iter(ch))) if ch else 0
    zero = tuple([0] * nv)
    out = [Counter({zero: 1})] + [Counter() for _ in range(kmax)]
    for w, m in ch.items():
        nxt = [Counter() for _ in range(kmax + 1)]
        for i in range(kmax + 1):
            coef = _gen_binom(m, i) if exterior else _gen_binom(m + i - 1, i)
            if coef == 0:
                if exterior and m >= 0 and i > m:
                    break
                continue
            shift = _wscale(w, i)
            for deg in range(kmax + 1 - i):
                for wb, mb in out[deg].items():
                    nxt[deg + i][_wadd(wb, shift)] += coef * mb
        out = [Counter({w_: c for w_, c in n.items() if c}) for n in nxt]
    return out


def _det_char(parts, zero):
    """Determinant of a small matrix of characters by permutation expansion."""
    n = len(parts)
    total = Counter()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Counter({zero: 1})
        for i in range(n):
            entry = parts[i][perm[i]]
            if not entry:
                term = Counter()
                break
            term = char_mul(term, entry)
        total = char_add(total, term, sign)
    return total


def schur_character(lam, ch):
    """Jacobi-Trudi in whichever of lam, lam' is shorter."""
    lam = Partition(lam)
    if not ch:
        return Counter() if lam else Counter()
    nv = len(next(iter(ch)))
    zero = tuple([0] * nv)
    if not lam:
        return Counter({zero: 1})
    conj = conjugate(lam)
    use_exterior = len(conj) < len(lam)
    shape = conj if use_exterior else lam
    kmax = shape[0] + len(shape)
    powers = _graded_powers(ch, kmax, use_exterior)
    n = len(shape)
    matrix = []
    for i in range(n):
        row = []
        for j in range(n):
            idx = shape[i] - i + j
            row.append(powers[idx] if 0 <= idx <= kmax else Counter())
        matrix.append(row)
    return _det_char(matrix, zero)


class CharacterEnv:
    """Weights of generators in a space of ``nvars`` root variables.

    ``gens`` maps generator names to characters (Counters of weight tuples)
    and ``lines`` maps line names (including hyperplane classes) to single
    weights.  ``det X`` symbols are resolved from ``gens`` automatically.
    """

    def __init__(self, nvars, gens=None, lines=None):
        self.nvars = nvars
        self.gens = dict(gens or {})
        self.lines = dict(lines or {})

    @property
    def zero(self):
        return tuple([0] * self.nvars)

    def line_weight(self, line):
        total = self.zero
        for key, c in line.exponents.items():
            if key in self.lines:
                w = self.lines[key]
            elif key.startswith("det ") and key[4:] in self.gens:
                w = self.zero
                for wt, m in self.gens[key[4:]].items():
                    w = _wadd(w, _wscale(wt, m))
            else:
                raise BundleError(f"no weight for line symbol {key!r}")
            total = _wadd(total, _wscale(w, c))
        return total


def character(e, env):
    """Torus character of ``e`` as a Counter {weight: multiplicity}."""
    zero = env.zero
    if isinstance(e, Generator):
        if e.name == TRIVIAL_NAME:
            return Counter({zero: e.rank}) if e.rank else Counter()
        if e.name not in env.gens:
            raise BundleError(f"generator {e.name} has no weights here")
        ch = env.gens[e.name]
        if sum(ch.values()) != e.rank:
            raise BundleError(f"generator {e.name} has rank {sum(ch.values())}, not {e.rank}")
        return Counter(ch)
    if isinstance(e, LineGen):
        return Counter({env.line_weight(LineClass({e.name: 1})): 1})
    if isinstance(e, Dual):
        return Counter({_wscale(w, -1): m for w, m in character(e.child, env).items()})
    if isinstance(e, Sum):
        out = Counter()
        for c in e.children:
            out = char_add(out, character(c, env))
        return out
    if isinstance(e, Tensor):
        out = Counter({zero: 1})
        for c in e.children:
            out = char_mul(out, character(c, env))
        return out
    if isinstance(e, Wedge):
        return _graded_powers(character(e.child, env), e.k, True)[e.k]
    if isinstance(e, Sym):
        return _graded_powers(character(e.child, env), e.k, False)[e.k]
    if isinstance(e, Schur):
        return schur_character(e.lam, character(e.child, env))
    if isinstance(e, Twist):
        shift = env.line_weight(e.line)
        return Counter({_wadd(w, shift): m for w, m in character(e.child, env).items()})
    if isinstance(e, Diff):
        return char_add(character(e.plus, env), character(e.minus, env), -1)
    raise BundleError(f"not a bundle expression: {e!r}")


def character_rank(ch):
    return sum(ch.values())


def character_det(ch, nvars):
    total = tuple([0] * nvars)
    for w, m in ch.items():
        total = _wadd(total, _wscale(w, m))
    return total


def generators_of(e, out=None):
    """All non-trivial generators and line names occurring in ``e``."""
    if out is None:
        out = {"gens": {}, "lines": set()}
    if isinstance(e, Generator):
        if e.name != TRIVIAL_NAME:
            out["gens"][e.name] = e.rank
    elif isinstance(e, LineGen):
        out["lines"].add(e.name)
    elif isinstance(e, (Sum, Tensor)):
        for c in e.children:
            generators_of(c, out)
    elif isinstance(e, Diff):
        generators_of(e.plus, out)
        generators_of(e.minus, out)
    elif isinstance(e, Twist):
        generators_of(e.child, out)
        for k in e.line.exponents:
            if k.startswith("det "):
                out["gens"].setdefault(k[4:], None)
            else:
                out["lines"].add(k)
    else:
        generators_of(e.child, out)
    return out


def formal_env(e):
    """Independent Chern-root variables for every generator and line of ``e``.

    Returns (env, det_map) where det_map sends a LineClass key to its
    weight, so closed-form determinants can be compared with characters.
    """
    found = generators_of(e)
    missing = [g for g, r in found["gens"].items() if r is None]
    if missing:
        raise BundleError(f"rank unknown for {missing}")
    names = sorted(found["gens"])
    lines = sorted(found["lines"])
    nvars = sum(found["gens"][g] for g in names) + len(lines)
    gens = {}
    pos = 0
    for g in names:
        ch = Counter()
        for _ in range(found["gens"][g]):
            w = [0] * nvars
            w[pos] = 1
            ch[tuple(w)] += 1
            pos += 1
        gens[g] = ch
    lw = {}
    for name in lines:
        w = [0] * nvars
        w[pos] = 1
        lw[name] = tuple(w)
        pos += 1
    return CharacterEnv(nvars, gens, lw)


def det_via_character(e, env=None):
    """Splitting-principle determinant, expressed back as a weight vector."""
    if env is None:
        env = formal_env(e)
    return character_det(character(e, env), env.nvars)


def substitute(e, gens=None, lines=None):
    """Replace generators by expressions and line keys by LineClass-like dicts.

    A ``det X`` key whose generator X is replaced is rewritten as the
    determinant of the replacement unless ``lines`` overrides it.
    """
    gens = dict(gens or {})
    rules = {k: (v.exponents if isinstance(v, LineClass) else dict(v))
             for k, v in (lines or {}).items()}
    for name, repl in gens.items():
        rules.setdefault(f"det {name}", det_expr(repl).exponents)
    return _subst(e, gens, rules)


def _subst(e, gens, rules):
    if isinstance(e, Generator):
        return gens.get(e.name, e) if e.name != TRIVIAL_NAME else e
    if isinstance(e, LineGen):
        if e.name in rules:
            return line_bundle(LineClass(rules[e.name]))
        return e
    if isinstance(e, Dual):
        return Dual(_subst(e.child, gens, rules))
    if isinstance(e, Sum):
        return Sum(tuple(_subst(c, gens, rules) for c in e.children))
    if isinstance(e, Tensor):
        return Tensor(tuple(_subst(c, gens, rules) for c in e.children))
    if isinstance(e, Wedge):
        return Wedge(e.k, _subst(e.child, gens, rules))
    if isinstance(e, Sym):
        return Sym(e.k, _subst(e.child, gens, rules))
    if isinstance(e, Schur):
        return Schur(e.lam, _subst(e.child, gens, rules))
    if isinstance(e, Twist):
        return Twist(_subst(e.child, gens, rules), e.line.substitute(rules))
    if isinstance(e, Diff):
        return Diff(_subst(e.plus, gens, rules), _subst(e.minus, gens, rules))
    raise BundleError(f"not a bundle expression: {e!r}")


# ------------------------------------------------------- s-expressions

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise BundleError(f"cannot tokenize near {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _read(tokens, i):
    if i >= len(tokens):
        raise BundleError("unexpected end of expression")
    tok = tokens[i]
    if tok == "(":
        items = []
        i += 1
        while i < len(tokens) and tokens[i] != ")":
            item, i = _read(tokens, i)
            items.append(item)
        if i >= len(tokens):
            raise BundleError("missing ')'")
        return items, i + 1
    if tok == ")":
        raise BundleError("unexpected ')'")
    return tok, i + 1


def _int(tok):
    try:
        return int(tok)
    except (TypeError, ValueError):
        raise BundleError(f"expected an integer, got {tok!r}") from None


def _partition_arg(arg):
    if isinstance(arg, list):
        return Partition(_int(x) for x in arg)
    from .partitions import parse_partition
    return parse_partition(arg)


def _line_arg(arg):
    if isinstance(arg, list) and len(arg) == 3 and arg[0] == "det":
        arg = [f"det {arg[1]}", arg[2]]
    if not isinstance(arg, list) or len(arg) != 2:
        raise BundleError(f"twist entries look like (L 2) or (det E -1), got {arg!r}")
    name, exp = arg
    return LineClass({name: Fraction(exp)})


def _build(tree, symbols):
    if isinstance(tree, str):
        if tree in symbols:
            return symbols[tree]
        raise BundleError(f"unknown symbol {tree!r}")
    if not tree:
        raise BundleError("empty expression")
    head, args = tree[0], tree[1:]
    if head == "gen":
        return Generator(args[0], _int(args[1]))
    if head == "line":
        return LineGen(args[0])
    if head == "trivial":
        return trivial(_int(args[0]) if args else 1)
    if head == "O":
        exps = [_int(a) for a in args]
        names = symbols.get("__hyperplanes__") or [f"h{j}" for j in range(1, len(exps) + 1)]
        if len(exps) != len(names):
            raise BundleError(f"(O ...) needs {len(names)} exponents here")
        return line_bundle(LineClass(dict(zip(names, exps))))
    if head == "dual":
        return Dual(_build(args[0], symbols))
    if head in ("sum", "+"):
        return Sum(tuple(_build(a, symbols) for a in args))
    if head in ("tensor", "*"):
        return Tensor(tuple(_build(a, symbols) for a in args))
    if head == "wedge":
        return Wedge(_int(args[0]), _build(args[1], symbols))
    if head == "sym":
        return Sym(_int(args[0]), _build(args[1], symbols))
    if head == "schur":
        return Schur(_partition_arg(args[0]), _build(args[1], symbols))
    if head == "twist":
        line = LineClass()
        for a in args[1:]:
            line = line + _line_arg(a)
        return Twist(_build(args[0], symbols), line)
    if head == "spin":
        # (spin + E L) or (spin + E (line L))
        line = args[2]
        if isinstance(line, list) and len(line) == 2 and line[0] == "line":
            line = line[1]
        if not isinstance(line, str):
            raise BundleError(f"spin needs a line name, got {line!r}")
        return spinor_bundle(_build(args[1], symbols), LineClass({line: 1}), args[0])
    if head == "minus":
        return Diff(_build(args[0], symbols), _build(args[1], symbols))
    if head == "times":
        n = _int(args[0])
        return Sum(tuple(_build(args[1], symbols) for _ in range(n)))
    raise BundleError(f"unknown operator {head!r}")


def parse_bundle(text, symbols=None):
    """Parse an s-expression; ``symbols`` maps bare names to expressions."""
    tokens = _tokenize(text)
    tree, end = _read(tokens, 0)
    if end != len(tokens):
        raise BundleError("trailing tokens after expression")
    try:
        return _build(tree, dict(symbols or {}))
    except IndexError:
        raise BundleError(f"missing arguments in {text!r}") from None


def to_sexpr(e):
    if isinstance(e, Generator):
        if e.name == TRIVIAL_NAME:
            return f"(trivial {e.rank})"
        return f"(gen {e.name} {e.rank})"
    if isinstance(e, LineGen):
        return f"(line {e.name})"
    if isinstance(e, Dual):
        return f"(dual {to_sexpr(e.child)})"
    if isinstance(e, Sum):
        return "(sum " + " ".join(to_sexpr(c) for c in e.children) + ")"
    if isinstance(e, Tensor):
        return "(tensor " + " ".join(to_sexpr(c) for c in e.children) + ")"
    if isinstance(e, Wedge):
        return f"(wedge {e.k} {to_sexpr(e.child)})"
    if isinstance(e, Sym):
        return f"(sym {e.k} {to_sexpr(e.child)})"
    if isinstance(e, Schur):
        return "(schur (" + " ".join(map(str, e.lam)) + f") {to_sexpr(e.child)})"
    if isinstance(e, Twist):
        parts = " ".join(f"({k} {v})" for k, v in e.line.exponents.items())
        return f"(twist {to_sexpr(e.child)} {parts})"
    if isinstance(e, Diff):
        return f"(minus {to_sexpr(e.plus)} {to_sexpr(e.minus)})"
    raise BundleError(f"not a bundle expression: {e!r}")


# ------------------------------------------------------- spaces

def space_symbols(space):
    """Bare names for the tautological bundles of ``space``.

    Factor j provides ``Uj`` and ``Qj``; a single-factor space also
    accepts plain ``U`` and ``Q``.
    """
    out = {name: Generator(name, r) for name, r in space.generator_names().items()}
    if len(space.factors) == 1:
        out["U"] = out["U1"]
        out["Q"] = out["Q1"]
    out["__hyperplanes__"] = list(space.hyperplanes)
    return out


def resolve_on_space(line, space):
    """Rewrite det-symbols of tautological generators as hyperplane classes."""
    return line.substitute(space.det_symbols())


def canonical_of_space(space):
    """K_X over the hyperplane classes of ``space``.

    Each factor contributes minus its Fano index and each hypersurface
    section adds its multidegree (adjunction).
    """
    return LineClass(dict(zip(space.hyperplanes, space.canonical_exponents())))
