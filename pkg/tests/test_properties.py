from random import Random

from property_checks import (
    euler_membership,
    intersection_der,
    kernel_rank_exactness,
    mobius_alternation,
    reduction_invariance,
)


def test_mobius_alternation():
    assert mobius_alternation(Random(101), 50) == 50


def test_euler_membership():
    assert euler_membership(Random(202), 40) == 40


def test_reduction_invariance():
    assert reduction_invariance(Random(303), 40) == 40


def test_intersection_der():
    assert intersection_der(Random(404), 30) == 30


def test_kernel_rank_exactness():
    assert kernel_rank_exactness(Random(505), 60) == 60
