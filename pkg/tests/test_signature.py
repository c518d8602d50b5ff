"""Тесты загрузки и проверки сигнатур."""

import json

import pytest

from synpy.exceptions import ParseError, PatternError, ShapeError, ValidationError
from synpy.hexp import Subst1
from synpy.signature import (
    BUNDLED,
    Operation,
    Signature2,
    dump_signature,
    load_signature,
    parse_signature_file,
)

LAMBDA_OPS = [{"name": "app", "arity": [0, 0]}, {"name": "abs", "arity": [1]}]


def _file(**overrides) -> bytes:
    data = {"name": "test", "ops": LAMBDA_OPS, "inequations": []}
    data.update(overrides)
    return json.dumps(data).encode()


def _ineq(**overrides) -> dict:
    data = {
        "name": "beta",
        "dom": [1, 0],
        "pattern_side": "lhs",
        "lhs": "(comp (pair (comp (proj 0) (ctor abs)) (proj 1)) (ctor app))",
        "rhs": "subst",
    }
    data.update(overrides)
    return data


# ═══════════════════════════════════════════════════════════
#  Поставляемые сигнатуры
# ═══════════════════════════════════════════════════════════


class TestBundled:
    def test_lambda_beta(self, beta):
        assert beta.name == "lambda-beta"
        assert list(beta.sig) == [Operation("app", (0, 0)), Operation("abs", (1,))]
        assert [i.name for i in beta.ineqs] == ["beta"]
        assert beta.ineq("beta").rhs == Subst1()

    def test_lambda_eta(self, eta):
        ineq = eta.ineq("eta")
        assert ineq.dom == (0,)
        assert ineq.cod(eta.sig) == (0,)

    def test_lambda_beta_eta(self, beta_eta):
        assert [i.name for i in beta_eta.ineqs] == ["beta", "eta"]

    @pytest.mark.parametrize("name", BUNDLED)
    def test_round_trip(self, name):
        sig2 = load_signature(name)
        assert parse_signature_file(dump_signature(sig2)) == sig2

    def test_unknown_reference(self):
        with pytest.raises(FileNotFoundError):
            load_signature("no-such.sig.json")

    def test_path(self, tmp_path):
        path = tmp_path / "ops.sig.json"
        path.write_bytes(_file())
        assert load_signature(path).name == "test"


# ═══════════════════════════════════════════════════════════
#  parse_signature_file
# ═══════════════════════════════════════════════════════════


class TestParseSignatureFile:
    def test_ops_only(self):
        sig2 = parse_signature_file(_file())
        assert isinstance(sig2, Signature2)
        assert sig2.ineqs == ()

    def test_missing_inequations_key(self):
        data = json.dumps({"name": "x", "ops": LAMBDA_OPS})
        assert parse_signature_file(data).ineqs == ()

    def test_json_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_signature_file(b'{\n  "name": "x",\n  "ops": [,]\n}')
        assert exc.value.line == 3

    def test_not_utf8(self):
        with pytest.raises(ParseError):
            parse_signature_file(b"\xff\xfe")

    def test_domain_disagrees_with_lhs(self):
        bad = _ineq(dom=[0, 0])
        with pytest.raises(ValidationError) as exc:
            parse_signature_file(_file(inequations=[bad]))
        assert isinstance(exc.value.__cause__, ShapeError)

    def test_codomains_differ(self):
        bad = _ineq(dom=[0], lhs="(proj 0)", rhs="(comp (proj 0) weaken)")
        with pytest.raises(ValidationError):
            parse_signature_file(_file(inequations=[bad]))

    def test_codomain_must_be_single_slot(self):
        bad = _ineq(dom=[0, 0], lhs="(id)", rhs="(id)")
        with pytest.raises(ValidationError):
            parse_signature_file(_file(inequations=[bad]))

    def test_pattern_discipline_checked_at_load(self):
        bad = _ineq(pattern_side="rhs")
        with pytest.raises(ValidationError) as exc:
            parse_signature_file(_file(inequations=[bad]))
        assert isinstance(exc.value.__cause__, PatternError)

    def test_duplicate_operation(self):
        ops = LAMBDA_OPS + [{"name": "app", "arity": [0]}]
        with pytest.raises(ValidationError) as exc:
            parse_signature_file(_file(ops=ops))
        assert exc.value.field == "ops[2].name"

    def test_duplicate_inequation(self):
        with pytest.raises(ValidationError):
            parse_signature_file(_file(inequations=[_ineq(), _ineq()]))

    def test_negative_arity(self):
        with pytest.raises(ValidationError):
            parse_signature_file(_file(ops=[{"name": "f", "arity": [-1]}]))

    def test_bad_identifier(self):
        with pytest.raises(ValidationError):
            parse_signature_file(_file(name="два слова"))

    def test_unknown_pattern_side(self):
        with pytest.raises(ValidationError):
            parse_signature_file(_file(inequations=[_ineq(pattern_side="both")]))

    def test_malformed_hexp(self):
        with pytest.raises(ValidationError) as exc:
            parse_signature_file(_file(inequations=[_ineq(rhs="(subst")]))
        assert isinstance(exc.value.__cause__, ParseError)
