import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from bdhlattice import BDHEncoder, BicliqueLattice
from bdhlattice.encoding import verify_encoding
from bdhlattice.exceptions import NotBDHError, UniversalVertexError
from bdhlattice.lattice import maximal_bicliques
from bdhlattice.oracle import brute_closure
from bdhlattice.pruning import generate_bdh

DOMINO = np.array([[1, 1, 0], [1, 1, 1], [0, 1, 1]])
P5 = np.array([[1, 0], [1, 1], [0, 1]])


def test_lattice_fit_on_domino():
    est = BicliqueLattice().fit(DOMINO)
    assert len(est.bicliques_) == 4 and not est.is_tree_shaped_ and not est.is_bdh_
    assert est.certificate_.kind == "domino" and est.n_features_in_ == 3
    assert est.extents().shape == (4, 3) and est.intents().shape == (4, 3)


def test_transform_on_fitted_matrix_is_extent_transpose():
    for seed in range(5):
        g, _ = generate_bdh(16, seed, 0.5)
        a = g.biadjacency()
        est = BicliqueLattice().fit(a)
        assert np.array_equal(est.transform(a), est.extents().T)
        assert est.is_bdh_ and est.is_tree_shaped_


def test_fit_transform_matches_fit_then_transform():
    a = P5
    assert np.array_equal(BicliqueLattice().fit_transform(a), BicliqueLattice().fit(a).transform(a))


def test_transform_new_rows():
    est = BicliqueLattice().fit(P5)
    out = est.transform([[1, 1], [0, 0]])
    assert out[0].all() and not out[1].any()


def test_strict_parameter():
    with pytest.raises(UniversalVertexError):
        BicliqueLattice(strict=True).fit(DOMINO)
    est = BicliqueLattice(strict=True)
    assert est.get_params() == {"strict": True}
    assert clone(est).strict is True


def test_lattice_input_validation():
    est = BicliqueLattice()
    with pytest.raises(ValueError):
        est.fit([[0, 2], [1, 1]])
    with pytest.raises(ValueError):
        est.fit(np.array([[np.nan, 1.0]]))
    with pytest.raises(NotFittedError):
        est.transform(P5)
    est.fit(P5)
    with pytest.raises(ValueError):
        est.transform([[1, 0, 1]])


def test_encoder_fit():
    g, _ = generate_bdh(30, 2, 0.5)
    enc = BDHEncoder().fit(g.biadjacency())
    assert verify_encoding(g, enc.encoding_x_) and verify_encoding(g, enc.encoding_y_)
    assert enc.storage_size_ <= 24 * g.n_vertices
    assert enc.sequence_.replay().edges() == g.edges()


def test_encoder_transform_matches_brute_force():
    a = P5
    enc = BDHEncoder().fit(a)
    out = enc.transform([[1, 0], [1, 1], [0, 1]])
    assert out.tolist() == [[True, True, False], [False, True, False], [False, True, True]]


def test_encoder_predict_matches_lattice():
    for seed in range(4):
        g, _ = generate_bdh(14, seed, 0.5)
        enc = BDHEncoder().fit(g.biadjacency())
        shores = {b.y_shore for b in maximal_bicliques(g)}
        rows = []
        for mask in range(1, 1 << min(g.n_y, 7)):
            rows.append([bool(mask >> j & 1) for j in range(g.n_y)])
        pred = enc.predict(rows)
        for row, p in zip(rows, pred):
            ys = frozenset(j for j, on in enumerate(row) if on)
            assert p == (ys in shores)


def test_encoder_transform_is_polarity():
    g, _ = generate_bdh(20, 8, 0.4)
    enc = BDHEncoder().fit(g.biadjacency())
    for i in range(g.n_x):
        xs, ys = brute_closure(g, [i])
        row = np.zeros(g.n_y, dtype=bool)
        row[sorted(ys)] = True
        assert set(np.flatnonzero(enc.transform([row])[0])) == set(xs)


def test_encoder_rejections():
    with pytest.raises(NotBDHError):
        BDHEncoder().fit(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))
    enc = BDHEncoder().fit(P5)
    with pytest.raises(ValueError):
        enc.predict([[0, 0]])
    with pytest.raises(ValueError):
        enc.transform([[1, 0, 0]])
    with pytest.raises(NotFittedError):
        BDHEncoder().predict([[1, 0]])


def test_estimators_repr_and_clone():
    assert repr(BicliqueLattice()) == "BicliqueLattice()"
    assert isinstance(clone(BDHEncoder()), BDHEncoder)
