"""scikit-learn style front end.

:class:`CoupledLineBandpass` is fitted from its hyper-parameters alone
(``fit`` runs the synthesis) and then maps frequency arrays to
S-parameters. :class:`StubOptimizer` is fitted on a filter estimator and
exposes the tuned filter as ``best_estimator_``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.utils.validation import check_is_fitted

from ._validation import check_frequencies, check_positive
from .optimizer import ObjectiveSpec, StubBounds, optimize_stubs
from .prototype import PrototypeSpec, lowpass_prototype
from .response import (
    Stub,
    StubConfig,
    SweepConfig,
    band_metrics,
    db20,
    evaluate_response,
    proposed_builder,
    traditional_builder,
)
from .synthesis import FilterSpec, synthesize


def _as_stub_config(stubs):
    if stubs is None or isinstance(stubs, StubConfig):
        return stubs
    return StubConfig(tuple(s if isinstance(s, Stub) else Stub(**s) for s in stubs))


class CoupledLineBandpass(TransformerMixin, BaseEstimator):
    """Parallel coupled-line bandpass filter, optionally loaded with open stubs.

    Parameters
    ----------
    f0 : float
        Center frequency in Hz.
    delta : float
        Fractional bandwidth, ``0 < delta < 1``.
    z0 : float
        System impedance in ohm.
    order, family, ripple_db
        Low-pass prototype.
    stubs : StubConfig, sequence of Stub or dicts, optional
        Open stubs at the inter-section junctions. ``None`` gives the
        traditional filter.
    z_ref : float, optional
        Port reference impedance; defaults to ``z0``.

    Attributes
    ----------
    prototype_ : PrototypeValues
    sections_ : list of SectionDesign
    stubs_ : StubConfig or None
    """

    def __init__(self, f0=2e9, delta=0.1, z0=50.0, order=3, family="equal-ripple",
                 ripple_db=0.5, stubs=None, z_ref=None):
        self.f0 = f0
        self.delta = delta
        self.z0 = z0
        self.order = order
        self.family = family
        self.ripple_db = ripple_db
        self.stubs = stubs
        self.z_ref = z_ref

    def fit(self, X=None, y=None):
        self.spec_ = FilterSpec(
            check_positive(self.f0, "f0"),
            self.delta,
            check_positive(self.z0, "z0"),
            PrototypeSpec(self.order, self.family, self.ripple_db),
        )
        self.prototype_ = lowpass_prototype(self.spec_.prototype)
        self.sections_ = synthesize(self.spec_, self.prototype_)
        self.stubs_ = _as_stub_config(self.stubs)
        if self.stubs_ is not None:
            self.stubs_.validate(self.spec_)
        self.z_ref_ = self.z0 if self.z_ref is None else check_positive(self.z_ref, "z_ref")
        return self

    def builder(self):
        check_is_fitted(self, "sections_")
        if self.stubs_ is None:
            return traditional_builder(self.sections_, self.spec_)
        return proposed_builder(self.sections_, self.stubs_, self.spec_)

    def network(self, X):
        """Chain matrix of the whole filter at frequencies ``X``."""
        return self.builder()(check_frequencies(X))

    def response(self, X):
        return evaluate_response(self.builder(), check_frequencies(X), self.z_ref_)

    def transform(self, X):
        """Complex ``[s11, s21, s12, s22]`` columns, one row per frequency."""
        tr = self.response(X)
        return np.column_stack([tr.s11, tr.s21, tr.s12, tr.s22])

    def predict(self, X):
        """Transmission ``|s21|`` in dB (floored at -200 dB)."""
        return db20(self.response(X).s21)

    def band_metrics(self, sweep=None, harmonic_window=0.1):
        sweep = sweep or SweepConfig()
        tr = self.response(sweep.frequencies())
        return band_metrics(tr, self.spec_.f0, self.spec_.delta, harmonic_window)


class StubOptimizer(BaseEstimator):
    """Tunes open stubs for a :class:`CoupledLineBandpass`.

    ``fit(filt)`` runs the multi-start simplex search over ``bounds`` (a
    sequence of :class:`StubBounds` or dicts of their fields). Objective
    parameters mirror :class:`ObjectiveSpec`.
    """

    def __init__(self, bounds=None, w_pass=10.0, w_h2=1.0, w_h3=1.0, passband_il_budget_db=0.5,
                 harmonic_window=0.1, suppression_target_db=-200.0, budget=2000, seed=0,
                 sweep=None):
        self.bounds = bounds
        self.w_pass = w_pass
        self.w_h2 = w_h2
        self.w_h3 = w_h3
        self.passband_il_budget_db = passband_il_budget_db
        self.harmonic_window = harmonic_window
        self.suppression_target_db = suppression_target_db
        self.budget = budget
        self.seed = seed
        self.sweep = sweep

    def fit(self, X, y=None):
        if not isinstance(X, CoupledLineBandpass):
            raise TypeError(f"expected a CoupledLineBandpass, got {type(X).__name__}")
        filt = clone(X).set_params(stubs=None).fit()
        bounds = self.bounds if self.bounds is not None else [StubBounds()]
        if isinstance(bounds, (StubBounds, dict)):
            bounds = [bounds]
        bounds = [b if isinstance(b, StubBounds) else StubBounds(**b) for b in bounds]
        objective = ObjectiveSpec(
            self.w_pass, self.w_h2, self.w_h3, self.passband_il_budget_db,
            self.harmonic_window, self.suppression_target_db,
        )
        self.result_ = optimize_stubs(
            filt.sections_, bounds, filt.spec_, objective, budget=self.budget, seed=self.seed,
            sweep_cfg=self.sweep or SweepConfig(), z_ref=filt.z_ref_,
        )
        self.best_stubs_ = self.result_.best
        self.best_estimator_ = clone(X).set_params(stubs=self.best_stubs_).fit()
        return self

    def transform(self, X):
        check_is_fitted(self, "best_estimator_")
        return self.best_estimator_.transform(X)
