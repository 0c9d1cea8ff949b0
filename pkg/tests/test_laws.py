import pytest

from sympconn.errors import PreconditionError
from sympconn.laws import LAWS, run_law

SEEDS = range(5)


@pytest.mark.parametrize("law_id", sorted(LAWS))
def test_registered_laws_pass(law_id):
    report = run_law(law_id, SEEDS)
    assert report["pass"], report


def test_unknown_law_rejected():
    with pytest.raises(PreconditionError, match="unknown law"):
        run_law("L99", SEEDS)


def test_failure_reports_minimal_seed():
    """A deliberately failing pseudo-law must surface the smallest seed."""
    from sympconn import laws

    def bad_law(seed):
        return {"boom": seed} if seed >= 3 else None

    laws.LAWS["Lbad"] = bad_law
    try:
        report = run_law("Lbad", [7, 3, 5, 1])
        assert report["pass"] is False
        assert report["seed"] == 3
    finally:
        del laws.LAWS["Lbad"]
