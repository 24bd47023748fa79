from .phi import (
    PhiCurve,
    QuadratureSettings,
    ShortTimeLaw,
    coherence_from_phi,
    phi_curve_ou_closed_form,
    phi_ou_closed_form,
    phi_quadrature,
    short_time_gamma,
    tau_dec_from_quadratic,
)
