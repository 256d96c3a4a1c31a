"""Parallel coupled-line bandpass filters with open-stub harmonic suppression."""

from .estimator import CoupledLineBandpass, StubOptimizer
from .network import (
    Flag,
    SMatrix,
    TwoPortABCD,
    abcd_to_s,
    cascade,
    coupled_section,
    inverter,
    shunt_open_stub,
    t_shaped_section,
    tline,
)
from .optimizer import ObjectiveSpec, OptimizationResult, StubBounds, objective, optimize_stubs
from .prototype import Family, PrototypeSpec, PrototypeValues, lowpass_prototype, required_order
from .response import (
    BandMetrics,
    ResponseTrace,
    Stub,
    StubConfig,
    SweepConfig,
    band_metrics,
    build_proposed,
    build_traditional,
    electrical_length_at,
    sweep,
)
from .synthesis import (
    FilterSpec,
    SectionDesign,
    admittance_inverters,
    even_odd_impedances,
    synthesize,
)

__version__ = "0.1.0"
