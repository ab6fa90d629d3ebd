import json

import numpy as np
import pytest

from duadic.ddc import BorderSpec, CirculantSpec, DdcCode, build_bordered, build_pure, circulant_row
from duadic.errors import DomainError, UsageError
from duadic.gf import field
from duadic.linalg import Matrix, rank, row_space_equal
from duadic.splitting import enumerate_coset_splittings, verify_splitting

S15 = [1, 4, 3, 12, 7, 13, 5]


def test_circulant_first_row():
    sp = verify_splitting(15, S15)
    row = circulant_row(CirculantSpec.make(3, sp, 2, 1, 0)).array
    assert row[0] == 2
    assert all(row[i] == 1 for i in S15)
    assert all(row[i] == 0 for i in sp.s2)


def test_pure_layout():
    sp = verify_splitting(7, [1, 2, 4])
    code = build_pure(CirculantSpec.make(2, sp, 1, 0, 1))
    g = code.generator.array
    assert g.shape == (7, 14) and code.length == 14 and code.dimension == 7
    assert np.array_equal(g[:, :7], np.eye(7, dtype=np.uint8))
    d = g[:, 7:]
    for i in range(7):
        assert np.array_equal(d[i], np.roll(d[0], i))


def test_bordered_layout():
    sp = verify_splitting(5, [1, 4])
    code = build_bordered(CirculantSpec.make(5, sp, 1, 2, 3), BorderSpec.make(5, 4, 2, 3))
    g = code.generator.array
    assert g.shape == (6, 12)
    assert list(g[0]) == [1, 0, 0, 0, 0, 0, 4, 2, 2, 2, 2, 2]
    assert all(g[1:, 0] == 0) and all(g[1:, 6] == 3)
    assert np.array_equal(g[1:, 1:6], np.eye(5, dtype=np.uint8))
    assert rank(code.generator) == 6


def test_gf4_symbols():
    sp = verify_splitting(3, [1])
    code = build_pure(CirculantSpec.make(4, sp, "w", "w2", "1"))
    assert list(code.generator.array[0, 3:]) == [2, 3, 1]
    assert code.label() == "P_3(w,w2,1) over GF(4)"


@pytest.mark.parametrize("q", [2, 3, 4])
def test_cyclic_shift_is_an_automorphism(q):
    rng = np.random.default_rng(q)
    for sp in enumerate_coset_splittings(9, 4):
        r, s, t, a, b, c = rng.integers(0, q, 6)
        circ = CirculantSpec.make(q, sp, r, s, t)
        for code in (build_pure(circ), build_bordered(circ, BorderSpec.make(q, a, b, c))):
            perm = code.cyclic_shift()
            g = code.generator.array
            moved = np.zeros_like(g)
            moved[:, perm] = g
            assert row_space_equal(code.generator, Matrix(code.spec, moved))


def test_dict_round_trip():
    sp = verify_splitting(15, S15)
    code = build_bordered(CirculantSpec.make(4, sp, "w", 0, 1), BorderSpec.make(4, 1, "w2", 0))
    d = json.loads(json.dumps(code.to_dict()))
    again = DdcCode.from_dict(d)
    assert again.generator == code.generator
    d["generator"] = d["generator"].replace("w2", "1", 1)
    with pytest.raises(DomainError):
        DdcCode.from_dict(d)


def test_mixed_fields_rejected():
    sp = verify_splitting(3, [1])
    with pytest.raises(UsageError):
        build_bordered(CirculantSpec.make(3, sp, 0, 0, 1), BorderSpec.make(2, 0, 1, 0))
    with pytest.raises(DomainError):
        CirculantSpec.make(3, sp, 0, 0, 3)
    f = field(3)
    with pytest.raises(UsageError):
        CirculantSpec(f, sp, field(5)(1), f(0), f(0))
