"""Estimator-style facade so the engine composes with sklearn-ish pipelines.

``fit`` computes the Groebner basis of the input system; ``transform`` maps
polynomials to their normal forms modulo the fitted basis, which makes ideal
membership a ``transform(...) == 0`` check.
"""

from __future__ import annotations

from .buchberger import normal_form, verify_gb
from .matrix import MatrixOptions, groebner_matrix
from .poly import Polynomial
from .ring import Ring
from .stepwise import StepOptions, groebner_step
from .sysio import System, parse_poly


class NotFittedError(RuntimeError):
    """fit() has not been called yet."""


_PARAM_NAMES = (
    "engine",
    "variables",
    "field",
    "boolean",
    "lcm",
    "syzygy",
    "principal",
    "rewritten",
    "record_syzygies",
    "verify",
)


def check_system(polys, ring: Ring) -> list[Polynomial]:
    """Validate that every polynomial is well formed for the given ring."""
    out = []
    for k, f in enumerate(polys):
        if not isinstance(f, Polynomial):
            raise TypeError(f"generator {k} is not a Polynomial")
        for m, c in f.terms:
            if len(m) != ring.n:
                raise ValueError(
                    f"generator {k} has a monomial in {len(m)} variables, ring has {ring.n}"
                )
            if not 0 < c < ring.p:
                raise ValueError(f"generator {k} has an unreduced coefficient {c}")
            if ring.boolean and any(e > 1 for e in m):
                raise ValueError(f"generator {k} is not squarefree in boolean mode")
        out.append(f)
    return out


class GroebnerSolver:
    """Compute a Groebner basis with the stepwise or matrix engine.

    Parameters mirror the engine options; ``rewritten`` and
    ``record_syzygies`` default to the engine-appropriate setting when left
    as None.  After ``fit``, ``basis_`` holds the monic basis in descending
    lead order and ``stats_`` the run counters.
    """

    def __init__(self, engine: str = "step", variables=None, field: int = 2,
                 boolean: bool = False, lcm: bool = True, syzygy: bool = True,
                 principal: bool = True, rewritten: bool | None = None,
                 record_syzygies: bool | None = None, verify: bool = False):
        self.engine = engine
        self.variables = variables
        self.field = field
        self.boolean = boolean
        self.lcm = lcm
        self.syzygy = syzygy
        self.principal = principal
        self.rewritten = rewritten
        self.record_syzygies = record_syzygies
        self.verify = verify

    # -- sklearn-style parameter plumbing --------------------------------

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in _PARAM_NAMES}

    def set_params(self, **params) -> "GroebnerSolver":
        for name, value in params.items():
            if name not in _PARAM_NAMES:
                raise ValueError(f"unknown parameter {name!r}")
            setattr(self, name, value)
        return self

    # -- fitting ----------------------------------------------------------

    def _resolve_ring(self, X) -> tuple[Ring, list[Polynomial]]:
        if isinstance(X, System):
            return X.ring, list(X.polys)
        X = list(X)
        if not X:
            raise ValueError("empty input system")
        if isinstance(X[0], str):
            if self.variables is None:
                raise ValueError("string input needs the 'variables' parameter")
            ring = Ring(list(self.variables), self.field, boolean=self.boolean)
            return ring, [parse_poly(ring, s) for s in X]
        n = len(X[0].terms[0][0]) if X[0].terms else None
        if n is None:
            for f in X:
                if f.terms:
                    n = len(f.terms[0][0])
                    break
        if n is None:
            raise ValueError("cannot infer the variable count from zero polynomials")
        names = list(self.variables) if self.variables is not None else [
            f"x{i + 1}" for i in range(n)
        ]
        ring = Ring(names, self.field, boolean=self.boolean)
        return ring, check_system(X, ring)

    def _options(self):
        common = dict(lcm=self.lcm, syzygy=self.syzygy, principal=self.principal)
        if self.engine == "step":
            opts = StepOptions(**common)
            if self.rewritten is not None:
                opts.rewritten = self.rewritten
            if self.record_syzygies is not None:
                opts.record_syzygies = self.record_syzygies
            return opts
        if self.engine == "matrix":
            opts = MatrixOptions(**common)
            if self.rewritten is not None:
                opts.rewritten = self.rewritten
            if self.record_syzygies is not None:
                opts.record_syzygies = self.record_syzygies
            return opts
        raise ValueError(f"unknown engine {self.engine!r}")

    def fit(self, X, y=None) -> "GroebnerSolver":
        ring, polys = self._resolve_ring(X)
        runner = groebner_step if self.engine == "step" else groebner_matrix
        result = runner(polys, ring, self._options())
        self.ring_ = ring
        self.result_ = result
        self.basis_ = result.basis
        self.state_ = result.state
        self.stats_ = result.stats.to_dict()
        self.n_generators_ = result.state.num_generators
        if self.verify:
            self.verification_ = verify_gb(self.basis_, polys, ring)
            if not self.verification_["ok"]:
                raise RuntimeError(
                    "basis verification failed: " + "; ".join(self.verification_["failures"])
                )
        return self

    def _check_fitted(self):
        if not hasattr(self, "basis_"):
            raise NotFittedError("call fit() before using the solver")

    def transform(self, X) -> list[Polynomial]:
        """Normal forms of the given polynomials modulo the fitted basis."""
        self._check_fitted()
        out = []
        for f in X:
            if isinstance(f, str):
                f = parse_poly(self.ring_, f)
            out.append(normal_form(f, self.basis_, self.ring_))
        return out

    def fit_transform(self, X, y=None) -> list[Polynomial]:
        return self.fit(X, y).transform(X)

    def contains(self, f) -> bool:
        """Ideal membership test for one polynomial."""
        return self.transform([f])[0].is_zero
