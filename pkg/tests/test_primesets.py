import numpy as np
import pytest

from liouville import (
    CubeGapSet,
    ValidationError,
    legendre,
    parse_prime_set,
    primes_up_to,
)

CUBE_GAP_FIRST_TEN = [11, 29, 67, 127, 223, 347, 521, 733, 1009, 1361]


class TestConstructors:
    def test_finite_membership(self):
        s = parse_prime_set("finite:5")
        assert s.contains(5)
        assert not s.contains(3)
        assert s.finite_elements() == [5]

    def test_finite_rejects_composite(self):
        with pytest.raises(ValidationError):
            parse_prime_set("finite:4,5")

    def test_finite_normalizes(self):
        s = parse_prime_set("finite:5,3,3,2")
        assert s.finite_elements() == [2, 3, 5]

    def test_cube_gap_first_elements(self):
        assert CubeGapSet().first_elements(10) == CUBE_GAP_FIRST_TEN

    def test_cube_gap_membership(self):
        s = parse_prime_set("cubegap")
        assert s.contains(11) and s.contains(1361)
        assert not s.contains(13) and not s.contains(2)

    def test_nonres_five(self):
        # squares mod 5 are {1, 4}: 2, 3 are non-residues; 11 = 1 mod 5 is a residue
        s = parse_prime_set("nonres:5")
        assert s.contains(2) and s.contains(3)
        assert not s.contains(11)
        assert not s.contains(5)

    def test_nonres_matches_legendre(self):
        s = parse_prime_set("nonres:7")
        for q in primes_up_to(500):
            q = int(q)
            assert s.contains(q) == (legendre(q, 7) == -1)

    def test_nonres_rejects_two(self):
        with pytest.raises(ValidationError):
            parse_prime_set("nonres:2")

    def test_residues(self):
        s = parse_prime_set("residues:4:1")
        assert s.contains(5) and s.contains(13)
        assert not s.contains(7) and not s.contains(2)

    def test_residues_validation(self):
        with pytest.raises(ValidationError):
            parse_prime_set("residues:1:0")
        with pytest.raises(ValidationError):
            parse_prime_set("residues:8:")
        with pytest.raises(ValidationError):
            parse_prime_set("residues:8:9")

    def test_tail(self):
        s = parse_prime_set("tail:100")
        assert s.contains(101) and not s.contains(97)
        assert s.first_prime() == 101

    def test_tail_validation(self):
        with pytest.raises(ValidationError):
            parse_prime_set("tail:1")

    def test_complement(self):
        s = parse_prime_set("complement:(finite:2,3)")
        assert not s.contains(2) and not s.contains(3)
        assert s.contains(5)

    def test_unknown_grammar(self):
        with pytest.raises(ValidationError):
            parse_prime_set("everything")

    def test_label_round_trip(self):
        for label in (
            "all",
            "none",
            "finite:2,3,5",
            "tail:100",
            "residues:8:3,5",
            "nonres:7",
            "cubegap",
            "complement:(finite:2,3)",
            "complement:(complement:(all))",
        ):
            s = parse_prime_set(label)
            assert parse_prime_set(s.label).label == s.label


class TestConvergenceFlags:
    @pytest.mark.parametrize(
        "label,expected",
        [
            ("none", "yes"),
            ("finite:2,3", "yes"),
            ("cubegap", "yes"),
            ("all", "no"),
            ("tail:50", "no"),
            ("nonres:5", "no"),
            ("residues:4:1", "no"),
            # only 2 is congruent to 2 mod 4
            ("residues:4:2", "yes"),
            ("complement:(all)", "yes"),
            ("complement:(none)", "no"),
            ("complement:(finite:2,3)", "no"),
            ("complement:(cubegap)", "no"),
            ("complement:(tail:50)", "yes"),
            ("complement:(nonres:5)", "no"),
        ],
    )
    def test_flags(self, label, expected):
        assert parse_prime_set(label).reciprocal_sum_converges == expected

    def test_residue_finite_elements(self):
        s = parse_prime_set("residues:4:2")
        assert s.finite_elements() == [2]

    def test_complement_tail_elements(self):
        s = parse_prime_set("complement:(tail:20)")
        assert s.finite_elements() == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_complement_all_is_empty(self):
        assert parse_prime_set("complement:(all)").finite_elements() == []


class TestBatchMembership:
    @pytest.mark.parametrize(
        "label",
        ["all", "none", "finite:2,7", "tail:11", "nonres:5", "residues:8:3,5", "cubegap",
         "complement:(nonres:5)"],
    )
    def test_batch_agrees_with_scalar(self, label):
        s = parse_prime_set(label)
        arr = primes_up_to(2000)
        batch = s.contains_batch(arr)
        scalar = np.array([s.contains(int(q)) for q in arr])
        assert np.array_equal(batch, scalar)

    def test_ones_map_to_false(self):
        s = parse_prime_set("all")
        arr = np.array([1, 2, 3], dtype=np.int64)
        assert s.contains_batch(arr).tolist() == [False, True, True]


class TestFirstPrime:
    @pytest.mark.parametrize(
        "label,expected",
        [
            ("all", 2),
            ("finite:13,7", 7),
            ("nonres:5", 2),
            ("cubegap", 11),
            ("tail:30", 31),
            ("none", None),
        ],
    )
    def test_first(self, label, expected):
        assert parse_prime_set(label).first_prime() == expected
