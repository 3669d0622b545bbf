"""Built-in maps: the Faran ball maps, the FHJZ family and the Lebl classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional

from app.services.arith import tower_sqrt_rational
from app.services.errors import InvalidMap, MissingParam, UnknownName
from app.services.expression_parser import parse_polynomial, parse_polynomial_list, parse_roster
from app.services.hermitian import Signature
from app.services.maps import RationalMap, affine_roster
from app.services.poly import Polynomial

ROSTER = affine_roster(2)
BALL_2 = Signature(2, 0)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    source: Signature
    target: Signature
    description: str
    params: tuple[str, ...] = ()
    numerators: str = ""
    denominator: str = "1"
    builder: Optional[Callable[[Mapping[str, str]], RationalMap]] = field(default=None, compare=False)

    def build(self, params: Mapping[str, str]) -> RationalMap:
        missing = [p for p in self.params if p not in params]
        if missing:
            raise MissingParam(f"{self.name} needs parameter(s) {', '.join(missing)}")
        if self.builder is not None:
            return self.builder(params)
        return RationalMap(
            source=self.source,
            target=self.target,
            numerators=parse_polynomial_list(self.numerators, ROSTER),
            denominator=parse_polynomial(self.denominator, ROSTER),
            name=self.name,
            description=self.description,
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.as_list(),
            "target": self.target.as_list(),
            "description": self.description,
            "params": list(self.params),
        }


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidMap(f"'{text}' is not a rational number") from exc


def _fhjz(params: Mapping[str, str]) -> RationalMap:
    a = parse_rational(params["a"])
    if abs(a) >= 1:
        raise InvalidMap(f"fhjz needs |a| < 1, got {a}")
    root = tower_sqrt_rational(1 - a * a)
    z1 = Polynomial.variable(ROSTER, "z1")
    z2 = Polynomial.variable(ROSTER, "z2")
    den = 1 - z1.scale(a)
    numerators = [
        z1 ** 2 * den,
        parse_polynomial("sqrt(2)*z1*z2", ROSTER) * den,
        z2 ** 2 * (z1 - a),
        (z2 ** 3).scale(root),
    ]
    return RationalMap(
        source=BALL_2,
        target=Signature(4, 0),
        numerators=numerators,
        denominator=den,
        name=f"fhjz(a={a})",
        params={"a": str(a)},
        description=_ENTRIES["fhjz"].description,
    )


def _lebl_7(params: Mapping[str, str]) -> RationalMap:
    g = parse_polynomial(params["g"], ROSTER)
    return RationalMap(
        source=BALL_2,
        target=Signature(2, 1),
        numerators=[g, g, Polynomial.constant(ROSTER, 1)],
        denominator=Polynomial.constant(ROSTER, 1),
        name="lebl-7",
        params={"g": str(g)},
        description=_ENTRIES["lebl-7"].description,
    )


def _entry(name: str, target: Signature, description: str, numerators: str, denominator: str = "1") -> CatalogEntry:
    return CatalogEntry(name, BALL_2, target, description, numerators=numerators, denominator=denominator)


_LEBL = Signature(2, 1)

_ENTRIES: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in [
        _entry("faran-1", Signature(3, 0), "linear embedding of the 2-ball into the 3-ball", "z1; z2; 0"),
        _entry("faran-2", Signature(3, 0), "Faran quadratic map (z1, z1*z2, z2^2)", "z1; z1*z2; z2^2"),
        _entry("faran-3", Signature(3, 0), "Whitney-type quadratic map", "z1^2; sqrt(2)*z1*z2; z2^2"),
        _entry("faran-4", Signature(3, 0), "Faran cubic map", "z1^3; sqrt(3)*z1*z2; z2^3"),
        CatalogEntry(
            "fhjz", BALL_2, Signature(4, 0),
            "family of rational maps into the 4-ball, equivalent to a polynomial map only for a = 0",
            params=("a",), builder=_fhjz,
        ),
        _entry("lebl-1", _LEBL, "linear embedding into Q(2,1)", "0; z1; z2"),
        _entry("lebl-2", _LEBL, "quadratic polynomial map into Q(2,1)", "z2^2; z1^2; sqrt(2)*z2"),
        _entry("lebl-3", _LEBL, "rational map with denominator z1^2", "z2; z1; z2^2", "z1^2"),
        _entry(
            "lebl-4", _LEBL, "quadratic rational map with real sqrt(3) coefficients",
            "z1^2 - sqrt(3)*z1*z2 + z2^2 - z1; z1^2 + sqrt(3)*z1*z2 + z2^2 - z1; z2^2 + z1 - sqrt(3)*z2 - 1",
            "z2^2 + z1 + sqrt(3)*z2 - 1",
        ),
        _entry(
            "lebl-5", _LEBL, "quadratic rational map with coefficients in Q(i, 2^(1/4))",
            "root4(2)*(z1*z2 + i*z1); root4(2)*(z1*z2 - i*z1); z2^2 - sqrt(2)*i*z2 + 1",
            "z2^2 + sqrt(2)*i*z2 + 1",
        ),
        _entry(
            "lebl-6", _LEBL, "cubic rational map",
            "sqrt(3)*(z2*z1^2 - z2); 2*z2^3; z1^3 + 3*z1",
            "3*z1^2 + 1",
        ),
        CatalogEntry(
            "lebl-7", BALL_2, _LEBL,
            "(g, g, 1) for a polynomial g; not transversal, so it is already distinguished",
            params=("g",), builder=_lebl_7,
        ),
    ]
}


def catalog_entries() -> list[CatalogEntry]:
    return list(_ENTRIES.values())


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name.strip().lower()]
    except KeyError:
        raise UnknownName(f"no catalog map named '{name}' (known: {', '.join(_ENTRIES)})") from None


def catalog(name: str, params: Optional[Mapping[str, str]] = None) -> RationalMap:
    """Build a catalog map; values in `params` are strings as typed by a user."""
    return catalog_entry(name).build(dict(params or {}))


def parse_params(items) -> dict[str, str]:
    """'k=v' strings (or one 'k=v;k=v' string) into a dict."""
    if isinstance(items, str):
        items = [part for part in items.split(";") if part.strip()]
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise MissingParam(f"parameter '{item}' is not of the form key=value")
        params[key.strip()] = value.strip()
    return params


def custom_map(
    source: str,
    target: str,
    numerators: str,
    denominator: str = "1",
    variables: Optional[str] = None,
) -> RationalMap:
    """A map typed by a user: signatures as "a,b", components separated by ";".

    Variables default to z1..zn for the source dimension.
    """
    source_sig = Signature.parse(source)
    roster = parse_roster(variables) if variables else affine_roster(source_sig.dimension)
    return RationalMap(
        source=source_sig,
        target=Signature.parse(target),
        numerators=parse_polynomial_list(numerators, roster),
        denominator=parse_polynomial(denominator or "1", roster),
        name="custom",
    )
