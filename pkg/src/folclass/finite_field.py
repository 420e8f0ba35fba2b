"""Exact arithmetic in small finite fields GF(p^k).

Elements are coefficient vectors over GF(p) reduced modulo a fixed monic
irreducible polynomial.  Fields are small enough (desk scale) that every
element can be enumerated and every check run exhaustively.  For fields of
order up to _TABLE_LIMIT, full multiplication/inverse tables are built once
and cached on the FieldSpec, which keeps bulk enumeration loops cheap.
"""

from __future__ import annotations

from .errors import EmbeddingError, FieldMismatchError, ParseError

SUPPORTED_CHARACTERISTICS = (2, 3, 5)

# Below this order a FieldSpec precomputes flat mul/inv tables.
_TABLE_LIMIT = 1024


def _poly_mod_mul(f, g, modulus, p):
    """Multiply two coefficient tuples and reduce mod (modulus, p)."""
    k = len(modulus) - 1
    prod = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                prod[i + j] = (prod[i + j] + fi * gj) % p
    # modulus is monic: x^k = -(lower terms)
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(k):
                prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
    return tuple(prod[:k])


def _poly_divmod_gfp(num, den, p):
    """Plain polynomial division over GF(p) on int-list coefficients."""
    num = list(num)
    dd = len(den) - 1
    while den[dd] == 0:
        dd -= 1
    inv_lead = pow(den[dd], p - 2, p) if den[dd] != 1 else 1
    quot = [0] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q = (c * inv_lead) % p
            quot[i - dd] = q
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - q * den[j]) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree <= k//2.

    A reducible degree-k polynomial always has a monic factor of degree at
    most k//2, so dividing by each of those is an exhaustive test at this
    scale.
    """
    k = len(modulus) - 1
    if k < 1 or modulus[k] != 1:
        return False
    if k == 1:
        return True
    if modulus[0] == 0:  # divisible by x
        return False
    for d in range(1, k // 2 + 1):
        for idx in range(p**d):
            den = [0] * (d + 1)
            n = idx
            for j in range(d):
                den[j] = n % p
                n //= p
            den[d] = 1
            _, rem = _poly_divmod_gfp(modulus, den, p)
            if len(rem) == 1 and rem[0] == 0:
                return False
    return True


_CANONICAL_MODULI: dict = {}


def canonical_modulus(p, k):
    """The canonical modulus: the least monic irreducible of degree k.

    "Least" orders coefficient vectors by their base-p integer encoding with
    the constant coefficient least significant, so tables are reproducible
    across runs and machines.  GF(4) gets u^2+u+1, GF(8) gets x^3+x+1.
    """
    key = (p, k)
    if key not in _CANONICAL_MODULI:
        if k == 1:
            _CANONICAL_MODULI[key] = (0, 1)  # GF(p) = GF(p)[x]/(x)
        else:
            for idx in range(p**k):
                coeffs = []
                n = idx
                for _ in range(k):
                    coeffs.append(n % p)
                    n //= p
                cand = tuple(coeffs) + (1,)
                if _is_irreducible(cand, p):
                    _CANONICAL_MODULI[key] = cand
                    break
            else:
                raise ValueError(f"no irreducible of degree {k} over GF({p})")
    return _CANONICAL_MODULI[key]


class FieldSpec:
    """A concrete finite field GF(p^k) with a fixed monic irreducible modulus.

    Instances are immutable and hashable; two specs compare equal exactly
    when (p, k, modulus) coincide.  All FieldElement arithmetic routes
    through the spec, so elements of distinct specs never silently mix.
    """

    def __init__(self, p, k, modulus=None):
        if p not in SUPPORTED_CHARACTERISTICS:
            raise ValueError(f"unsupported characteristic {p}; expected one of {SUPPORTED_CHARACTERISTICS}")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = canonical_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[k] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self._coeffs_by_index = None
        self._mul_table = None
        self._inv_table = None
        self._add_table = None
        self._embedding_roots = {}
        self._zero = None
        self._one = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.literal()})"

    def literal(self):
        """Round-trippable field literal, e.g. GF(4) or GF(8;mod=x3+x+1)."""
        if self.modulus == canonical_modulus(self.p, self.k):
            return f"GF({self.order})"
        return f"GF({self.order};mod={format_modulus(self.modulus)})"

    # -- element plumbing ---------------------------------------------------

    def coeffs_of_index(self, idx):
        if self._coeffs_by_index is not None:
            return self._coeffs_by_index[idx]
        coeffs = []
        for _ in range(self.k):
            coeffs.append(idx % self.p)
            idx //= self.p
        return tuple(coeffs)

    def index_of_coeffs(self, coeffs):
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + c
        return idx

    def _build_tables(self):
        if self._coeffs_by_index is not None:
            return
        p, q = self.p, self.order
        self._coeffs_by_index = [self.coeffs_of_index(i) for i in range(q)]
        by_idx = self._coeffs_by_index
        add = [0] * (q * q)
        mul = [0] * (q * q)
        for i in range(q):
            ci = by_idx[i]
            for j in range(i, q):
                cj = by_idx[j]
                s = self.index_of_coeffs(tuple((a + b) % p for a, b in zip(ci, cj)))
                m = self.index_of_coeffs(_poly_mod_mul(ci, cj, self.modulus, p))
                add[i * q + j] = add[j * q + i] = s
                mul[i * q + j] = mul[j * q + i] = m
        self._add_table = tuple(add)
        self._mul_table = tuple(mul)
        inv = [0] * q
        for i in range(1, q):
            # brute-force inverse scan; q <= _TABLE_LIMIT keeps this cheap
            for j in range(1, q):
                if self._mul_table[i * q + j] == 1:
                    inv[i] = j
                    break
        self._inv_table = tuple(inv)

    def tables(self):
        """(q, add, mul, inv) flat tables for bulk index arithmetic."""
        if self.order > _TABLE_LIMIT:
            raise ValueError(f"field of order {self.order} is above the table limit")
        self._build_tables()
        return self.order, self._add_table, self._mul_table, self._inv_table

    # -- constructors -------------------------------------------------------

    def element(self, coeffs):
        if isinstance(coeffs, FieldElement):
            if coeffs.spec != self:
                raise FieldMismatchError("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, int):
            return FieldElement(self, self.coeffs_of_index(coeffs % self.order))
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients for this field")
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return FieldElement(self, coeffs)

    @property
    def zero(self):
        if self._zero is None:
            self._zero = self.element(0)
        return self._zero

    @property
    def one(self):
        if self._one is None:
            self._one = self.element(1)
        return self._one

    @property
    def generator(self):
        """The residue class of the modulus variable (printed as u)."""
        if self.k == 1:
            return self.zero
        return self.element((0, 1))

    def elements(self):
        """All p^k elements in index order (constant coefficient varies fastest)."""
        return [self.element(i) for i in range(self.order)]


class FieldElement:
    """An element of a FieldSpec, stored as a coefficient vector over GF(p)."""

    __slots__ = ("spec", "coeffs", "index")

    def __init__(self, spec, coeffs):
        self.spec = spec
        self.coeffs = coeffs
        self.index = spec.index_of_coeffs(coeffs)

    @staticmethod
    def _from_index(spec, idx):
        # hot-path constructor; spec tables must already exist
        e = FieldElement.__new__(FieldElement)
        e.spec = spec
        e.coeffs = spec._coeffs_by_index[idx]
        e.index = idx
        return e

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(
                f"operands from distinct fields {self.spec.literal()} and {other.spec.literal()}"
            )

    def __add__(self, other):
        self._check(other)
        spec = self.spec
        if spec._add_table is not None:
            return FieldElement._from_index(spec, spec._add_table[self.index * spec.order + other.index])
        p = spec.p
        return FieldElement(spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        if spec._mul_table is not None:
            return FieldElement._from_index(spec, spec._mul_table[self.index * spec.order + other.index])
        return FieldElement(spec, _poly_mod_mul(self.coeffs, other.coeffs, spec.modulus, spec.p))

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        spec = self.spec
        if spec._inv_table is not None:
            return FieldElement._from_index(spec, spec._inv_table[self.index])
        return self ** (spec.order - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self):
        """x -> x^p, an automorphism of the field."""
        return self ** self.spec.p

    def pth_root(self):
        """The unique y with y^p = x, namely x^(p^(k-1))."""
        return self ** (self.spec.p ** (self.spec.k - 1))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"<{format_element(self)} in {self.spec.literal()}>"

    def __str__(self):
        return format_element(self)


def pth_root(x):
    return x.pth_root()


def enumerate_elements(spec):
    return spec.elements()


def embed(x, target):
    """Embed x into the extension field `target`.

    The embedding sends the source generator to the first root (in element
    order) of the source modulus found in the target, computed once per
    (source, target) pair and cached, so embeddings are consistent across
    calls.  Raises EmbeddingError when the source modulus has no root in the
    target, i.e. when the target degree is not a multiple of the source's.
    """
    spec = x.spec
    if target == spec:
        return x
    if target.p != spec.p:
        raise EmbeddingError("embedding requires equal characteristic")
    root = spec._embedding_roots.get(target)
    if root is None:
        mod_elems = [target.element((c,)) for c in spec.modulus]
        for cand in target.elements():
            acc = target.zero
            for c in reversed(mod_elems):
                acc = acc * cand + c
            if not acc:
                root = cand
                break
        else:
            raise EmbeddingError(
                f"modulus of {spec.literal()} has no root in {target.literal()}"
            )
        spec._embedding_roots[target] = root
    acc = target.zero
    for c in reversed(x.coeffs):
        acc = acc * root + target.element((c,))
    return acc


def extension_field(spec, m):
    """The canonical degree-m extension GF(p^(k*m)) of spec."""
    if m == 1:
        return spec
    return FieldSpec(spec.p, spec.k * m)


def minimal_degree_over(x, base_order):
    """Degree of x over the order-`base_order` subfield, via Frobenius orbits."""
    d = 1
    y = x ** base_order
    while y != x:
        y = y ** base_order
        d += 1
    return d


# -- literals ----------------------------------------------------------------


def format_element(x):
    """Element literal in the generator u, e.g. 0, 1, u+1, 2*u^2+1."""
    terms = []
    for e in range(x.spec.k - 1, -1, -1):
        c = x.coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            var = "u" if e == 1 else f"u^{e}"
            terms.append(var if c == 1 else f"{c}*{var}")
    return "+".join(terms) if terms else "0"


def _parse_element_term(s, pos, text):
    """One term of an element literal: int, u, u^e, int*u^e, int u^e."""
    n = len(s)
    start = pos
    num = None
    while pos < n and s[pos].isdigit():
        pos += 1
    if pos > start:
        num = int(s[start:pos])
    if pos < n and s[pos] == "*":
        if num is None:
            raise ParseError("unexpected '*'", text, pos)
        pos += 1
        if pos >= n or s[pos] != "u":
            raise ParseError("expected generator u after '*'", text, pos)
    exp = 0
    if pos < n and s[pos] == "u":
        pos += 1
        exp = 1
        if pos < n and s[pos] == "^":
            pos += 1
            dstart = pos
            while pos < n and s[pos].isdigit():
                pos += 1
            if pos == dstart:
                raise ParseError("expected exponent digits", text, dstart)
            exp = int(s[dstart:pos])
    if num is None and exp == 0:
        raise ParseError("expected coefficient or generator", text, start)
    return (1 if num is None else num), exp, pos


def parse_element(text, spec):
    """Parse an element literal like `u+1` or `2*u^2+2` into spec."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty element literal", text, 0)
    value = spec.zero
    pos = 0
    n = len(s)
    while True:
        num, exp, pos = _parse_element_term(s, pos, text)
        value = value + spec.element((num % spec.p,)) * spec.generator**exp
        if pos == n:
            break
        if s[pos] != "+":
            raise ParseError(f"unexpected character {s[pos]!r}", text, pos)
        pos += 1
        if pos == n:
            raise ParseError("trailing '+'", text, pos)
    return value


def format_modulus(modulus):
    """Modulus literal in x with bare exponents, e.g. x3+x+1."""
    terms = []
    for e in range(len(modulus) - 1, -1, -1):
        c = modulus[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            var = "x" if e == 1 else f"x{e}"
            terms.append(var if c == 1 else f"{c}{var}")
    return "+".join(terms) if terms else "0"


def _parse_modulus(text, p):
    s = text.replace(" ", "").replace("^", "")
    coeffs = {}
    pos = 0
    n = len(s)
    if not s:
        raise ParseError("empty modulus literal", text, 0)
    while True:
        start = pos
        num = None
        while pos < n and s[pos].isdigit():
            pos += 1
        if pos > start:
            num = int(s[start:pos])
        exp = 0
        if pos < n and s[pos] == "x":
            pos += 1
            exp = 1
            dstart = pos
            while pos < n and s[pos].isdigit():
                pos += 1
            if pos > dstart:
                exp = int(s[dstart:pos])
        elif num is None:
            raise ParseError("expected coefficient or x", text, start)
        coeffs[exp] = (coeffs.get(exp, 0) + (1 if num is None else num)) % p
        if pos == n:
            break
        if s[pos] != "+":
            raise ParseError(f"unexpected character {s[pos]!r}", text, pos)
        pos += 1
    k = max(coeffs)
    return tuple(coeffs.get(e, 0) for e in range(k + 1))


_FIELD_CACHE: dict = {}


def parse_field(text):
    """Parse a field literal: GF(4), GF(9), GF(8;mod=x3+x+1)."""
    s = text.strip()
    if not (s.startswith("GF(") and s.endswith(")")):
        raise ParseError("field literal must look like GF(q) or GF(q;mod=...)", text, 0)
    body = s[3:-1]
    mod_text = None
    if ";" in body:
        body, opt = body.split(";", 1)
        if not opt.startswith("mod="):
            raise ParseError("unknown field option; expected mod=...", text, s.index(";") + 1)
        mod_text = opt[4:]
    try:
        q = int(body)
    except ValueError:
        raise ParseError("field order must be an integer", text, 3) from None
    for p in SUPPORTED_CHARACTERISTICS:
        k = 0
        n = q
        while n % p == 0:
            n //= p
            k += 1
        if n == 1 and k >= 1:
            modulus = _parse_modulus(mod_text, p) if mod_text else None
            key = (p, k, modulus)
            if key not in _FIELD_CACHE:
                _FIELD_CACHE[key] = FieldSpec(p, k, modulus)
            return _FIELD_CACHE[key]
    raise ParseError(f"order {q} is not a power of a supported prime", text, 3)


def GF(q, mod=None):
    """Convenience constructor: GF(4), GF(8), GF(9), ..."""
    if mod is not None:
        return parse_field(f"GF({q};mod={mod})")
    return parse_field(f"GF({q})")
