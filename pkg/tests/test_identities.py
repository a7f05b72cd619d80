import pytest

from centralizers.identities import (
    Identity,
    IdentitySyntaxError,
    MapApp,
    Term,
    Var,
    builtin_identities,
    format_law,
    get_law,
    mn_jordan,
    parse_identity,
    parse_law,
)


def test_catalog_round_trips():
    catalog = builtin_identities()
    assert len(catalog) >= 10
    for key, law in catalog.items():
        assert parse_law(format_law(law)) == law, key


def test_parse_structure():
    ident = parse_identity("2*T(x*y*x) = T(x)*y*x + x*y*T(x)")
    assert ident.lhs == (Term(2, (MapApp("T", ("x", "y", "x")),)),)
    assert ident.rhs[0] == Term(1, (MapApp("T", ("x",)), Var("y"), Var("x")))
    assert ident.variables == ("x", "y")
    assert ident.degree("x") == 2 and ident.degree("y") == 1


def test_powers_and_signs():
    ident = parse_identity("T(x^2) - T(x)*x = 0")
    assert ident.lhs[0].factors[0] == MapApp("T", ("x", "x"))
    assert ident.lhs[1].coefficient == -1
    assert ident.rhs == ()
    assert str(ident) == "T(x*x) - T(x)*x = 0"
    assert parse_identity("x^2*T(y) = 3*2*T(x*x*y)").rhs[0].coefficient == 6


def test_mn_jordan_differs_only_in_known_slot():
    mn = mn_jordan(1, 1)[0]
    vk = get_law("vukman-1999")[0]
    assert mn.known_slots == ("T0",)
    assert str(mn).replace("T0", "T") == str(vk)


def test_vukman_2001_degrees():
    ident = get_law("vukman-2001")[0]
    assert ident.degree("x") == 2 and ident.degree("y") == 1


def test_get_law_forms():
    assert get_law("mn-jordan(3, 4)") == mn_jordan(3, 4)
    assert len(get_law("two-sided-centralizer")) == 2
    assert get_law("T(x*y) = T(x)*y") == get_law("left-centralizer")
    with pytest.raises(KeyError):
        get_law("no-such-law")


@pytest.mark.parametrize(
    "text",
    ["T(x) =", "= T(x)", "T(T(x)) = x", "T() = x", "T(x) = x %", "T(x) = x)", "T(x)*T(y) = x*y", "3 = T(x)", "T(x^0) = x"],
)
def test_syntax_errors(text):
    with pytest.raises(IdentitySyntaxError):
        parse_law(text)


def test_identity_rejects_nonlinear_terms():
    with pytest.raises(ValueError):
        Identity((Term(1, (MapApp("T", ("x",)), MapApp("T", ("y",)))),), ())
    with pytest.raises(ValueError):
        mn_jordan(0, 1)
