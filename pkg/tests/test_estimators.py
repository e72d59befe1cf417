import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ppcp.estimators import MacPCenter, PartialPCenter, PCenter, PPCPSolver, check_graph
from ppcp.feasibility import mac_decomposition
from ppcp.graph import GraphError, WeightedGraph
from ppcp.instances import fig1_star, fig8_path, path, tree_random


def test_params_round_trip():
    est = PartialPCenter(p=2, method="approx", targets=(0, 3))
    assert est.get_params() == {"p": 2, "method": "approx", "targets": (0, 3)}
    copy = clone(est)
    assert copy.get_params() == est.get_params() and copy is not est
    assert est.set_params(p=3).p == 3


def test_fit_sets_attributes():
    est = PPCPSolver(p=4).fit(fig8_path(4))
    assert est.centers_ == (0, 3, 4, 7) and est.value_ == 2
    assert est.report_.optimal


def test_predict_assigns_nearest_center():
    est = MacPCenter(p=2).fit(path(5))
    assert est.centers_ == (0, 4)
    # vertex 2 is equidistant; the smaller center id wins
    assert est.predict() == [0, 0, 0, 4, 4]
    assert est.predict([3]) == [4]


def test_fit_predict():
    assert PCenter(p=1).fit_predict(path(3)) == [1, 1, 1]


def test_not_fitted():
    with pytest.raises(NotFittedError):
        PPCPSolver().predict()


def test_infeasible_fit():
    with pytest.raises(GraphError, match="no feasible"):
        PPCPSolver(p=2).fit(fig1_star())


@pytest.mark.parametrize("method", ["exact", "approx", "tree"])
def test_methods_agree_on_trees_where_exact(method):
    t = tree_random(9, 4)
    p = mac_decomposition(t).min_feasible_p + 1
    est = MacPCenter(p=p, method=method).fit(t)
    exact = MacPCenter(p=p).fit(t).value_
    assert est.value_ <= 2 * exact
    if method != "approx":
        assert est.value_ == exact


def test_bad_parameters():
    with pytest.raises(ValueError):
        PCenter(method="approx").fit(path(3))
    with pytest.raises(ValueError):
        PPCPSolver(p=-1).fit(path(3))


def test_input_validation():
    with pytest.raises(TypeError):
        check_graph([[0, 1], [1, 0]])
    with pytest.raises(GraphError):
        check_graph(WeightedGraph.from_edges(3, [(0, 1)]))


def test_bad_predict_vertex():
    est = PCenter(p=1).fit(path(3))
    with pytest.raises(GraphError):
        est.predict([5])


def test_module_doctest():
    import doctest

    import ppcp.estimators

    assert doctest.testmod(ppcp.estimators).failed == 0
