"""Smoke tests for the python module and the CLI surface."""

import json
import os
import subprocess

import pytest

import markovcx as mx

A3 = [[0, 1, 2, 3], [1, 1, 1, 1]]
EX = [[3, 3, 4, 5], [2, 3, 0, 0]]


def test_kernel_and_rank():
    assert mx.rank(A3) == 2
    basis = mx.kernel_basis(A3)
    assert len(basis) == 2
    for row in basis:
        assert all(sum(a * x for a, x in zip(arow, row)) == 0 for arow in A3)


def test_bouquets_of_worked_example():
    dec = mx.bouquets(EX)
    assert dec["bouquets"] == [[0, 1], [2], [3]]
    assert dec["cB"][0] == [3, -2, 0, 0]
    assert dec["AB"] == [[3, 4, 5], [0, 0, 0]]
    assert mx.map_T(EX, [3, -2, -2, 1]) == [1, -2, 1]
    assert mx.map_D(EX, [0, 5, -4]) == [0, 0, 5, -4]


def test_graver_and_markov():
    assert mx.graver([[1, 2]])["elements"] == [[2, -1]]
    assert mx.graver_bruteforce([[1, 2]], 6)["elements"] == [[2, -1]]
    mm = mx.minimal_markov([[3, 4, 5], [0, 0, 0]])
    assert sorted(mm["elements"]) == sorted([[1, -2, 1], [2, 1, -2], [3, -1, -1]])
    assert mx.is_markov_basis([[3, 4, 5], [0, 0, 0]], mm["elements"])


def test_fibers_and_indispensability():
    assert sorted(mx.fiber_of(A3, [1, -1, -1, 1])) == [[0, 1, 1, 0], [1, 0, 0, 1]]
    assert mx.is_indispensable(A3, [1, -1, -1, 1])
    lift = mx.lawrence_lift(A3, 3)
    witness = mx.witness_matrix(3)
    flat = [x for row in witness for x in row]
    assert mx.is_indispensable(lift, flat)


def test_not_positively_graded_raises():
    with pytest.raises(mx.UnsupportedInputError):
        mx.fiber_by_degree([[1, -1]], [0])


def test_bounds_and_tree_depth():
    assert mx.complexity_bound(1, 1) == 28
    assert mx.complexity_bound_sharp(0, 3) == 2
    assert mx.graver_norm_bound(1, 2) == 27
    # big values stay exact through the boundary
    assert mx.graver_norm_bound(2, 5) == 5 ** 31
    edges = [(0, 2), (1, 3)]
    assert mx.tree_depth(4, edges, "single-tree") == 3
    assert mx.tree_depth(4, edges, "forest") == 2


def test_complexity_report():
    rep = mx.markov_complexity_upto([[1, 1]], 3)
    assert rep["markov_max_type"] == [2, 2]
    assert rep["lower_bound"] == 2
    assert rep["graver_max_type"] is None


CLI = os.environ.get("MARKOVCX_BIN")


def run_cli(args, input_text=None):
    return subprocess.run(
        [CLI, *args], input=input_text, capture_output=True, text=True, timeout=300
    )


@pytest.mark.skipif(CLI is None, reason="MARKOVCX_BIN not set")
def test_cli_deterministic_and_roundtrip():
    matrix_text = "2 4\n3 3 4 5\n2 3 0 0\n"
    first = run_cli(["kernel", "--json"], matrix_text)
    second = run_cli(["kernel", "--json"], matrix_text)
    assert first.returncode == 0
    assert first.stdout == second.stdout

    jobs1 = run_cli(["graver", "--jobs", "1"], matrix_text)
    jobs8 = run_cli(["graver", "--jobs", "8"], matrix_text)
    assert jobs1.returncode == 0
    assert jobs1.stdout == jobs8.stdout

    lifted = run_cli(["lift", "-r", "2"], matrix_text)
    assert lifted.returncode == 0
    reparsed = mx.parse_matrix(lifted.stdout)
    assert reparsed == mx.lawrence_lift(EX, 2)


@pytest.mark.skipif(CLI is None, reason="MARKOVCX_BIN not set")
def test_cli_complexity_schema():
    out = run_cli(["complexity", "--max-r", "2", "--json"], "1 2\n1 1\n")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert list(doc.keys()) == [
        "matrix_digest",
        "r",
        "markov_max_type",
        "graver_max_type",
        "lower_bound",
        "upper_bound_closed_form",
        "tree_depth",
    ]
    assert doc["r"] == [2]
    assert doc["markov_max_type"] == [2]
    assert doc["graver_max_type"] is None
    assert isinstance(doc["upper_bound_closed_form"], str)


@pytest.mark.skipif(CLI is None, reason="MARKOVCX_BIN not set")
def test_cli_exit_codes():
    assert run_cli(["kernel"], "garbage").returncode == 2
    assert run_cli(["fiber", "--degree", "0"], "1 2\n1 -1\n").returncode == 3
    assert (
        run_cli(
            ["graver", "--graver-cap", "2"], "2 4\n0 1 2 3\n1 1 1 1\n"
        ).returncode
        == 4
    )
