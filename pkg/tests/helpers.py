"""Small constructors shared by the tests."""

from gorsum.algebra import algebra_from_presentation
from gorsum.poly import PolyRing


def present(F, variables, relations, graded=None):
    """``F[variables]/(relations)`` as ``(algebra, presentation)``."""
    return algebra_from_presentation(PolyRing(F, variables), relations, graded=graded)


def alg(F, variables, relations, graded=None):
    return present(F, variables, relations, graded)[0]


def corpus_path(name):
    from gorsum.suites import corpus_paths

    return str(next(p for p in corpus_paths() if p.name == f"{name}.gs"))


def corpus_text(name):
    with open(corpus_path(name), encoding="utf-8") as fh:
        return fh.read()
