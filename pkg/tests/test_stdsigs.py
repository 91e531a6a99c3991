import pytest

from conftest import C, O, kernel
from eqlf import stdsigs
from eqlf.core import BULLET, PiCls, Telescope, Var, instantiate
from eqlf.kernel import Kernel, check_context
from eqlf.kernel.rules import is_equation


def test_corpus_listing():
    ids = [e.id for e in stdsigs.corpus()]
    assert ids == ["godel_t", "dependent_t", "eq_type", "id_type", "universes", "sigma_neg", "sigma_pos"]
    assert all(p.is_file() for e in stdsigs.corpus() for p in e.file_paths)


@pytest.mark.parametrize("sig_id", stdsigs.ids() + ["arith", "arith_dep"])
def test_entry_checks(sig_id):
    check_context(stdsigs.load(sig_id))


def test_godel_t_declarations():
    assert stdsigs.load("godel_t").names() == [
        "tp", "el", "nat", "arr", "zero", "succ", "rec",
        "nat_beta_z", "nat_beta_s", "lam", "app", "arr_beta", "arr_eta",
    ]


def test_eq_type_extends_dependent_prefix():
    dep = stdsigs.load("dependent_t").names()
    names = stdsigs.load("eq_type").names()
    assert names[: len(dep)] == dep
    assert names[len(dep):] == ["eq", "self", "eqref", "equni"]


def test_sigma_neg_has_projections():
    names = stdsigs.load("sigma_neg").names()
    for c in ("sig", "pair", "fst", "snd", "sig_beta_fst", "sig_beta_snd", "sig_eta"):
        assert c in names


def test_universes_use_levels():
    u = stdsigs.load("universes").lookup("u")
    assert u == C("Lvl -> tp")


def _schema(cls):
    decls = []
    while isinstance(cls, PiCls):
        name = f"v{len(decls)}"
        decls.append((name, cls.domain))
        cls = instantiate(cls.body, Var(name))
    return Telescope(tuple(decls)), cls


@pytest.mark.parametrize("sig_id", stdsigs.ids())
def test_equations_prove_their_own_schema(sig_id):
    sig = stdsigs.load(sig_id)
    for name, cls in sig:
        if not is_equation(cls) or name == "split_eta":
            continue
        tele, eq = _schema(cls)
        Kernel.checked(sig, tele).check(BULLET, eq)


def test_split_eta_is_not_used():
    # its left-hand side is not a pattern; the kernel only warns
    k = kernel("sigma_pos", "A : tp. B : el A -> tp. C : el (sig A B) -> tp. "
                            "H : {z : el (sig A B)} el (C z). m : el (sig A B).")
    split = "split A B C ([x : el A] [y : el (B x)] H (pair A B x y)) m"
    assert not k.equal_objects(O("H m"), O(split), O("el (C m)")).proven
    # on a pair, split_beta alone suffices
    k2 = kernel("sigma_pos", "A : tp. B : el A -> tp. C : el (sig A B) -> tp. "
                             "H : {z : el (sig A B)} el (C z). a : el A. b : el (B a).")
    pair = "pair A B a b"
    split2 = f"split A B C ([x : el A] [y : el (B x)] H (pair A B x y)) ({pair})"
    assert k2.equal_objects(O(f"H ({pair})"), O(split2), O(f"el (C ({pair}))")).proven


def test_unknown_id():
    with pytest.raises(KeyError):
        stdsigs.entry("nope")
