"""
Complex gamma function.

Lanczos approximation (g = 607/128, fifteen coefficients) with the reflection
formula for Re z < 1/2. The large terms of log Gamma (|Im z| log|z| and
pi |Im z|) are carried as double-double pairs, and the phase is reduced mod
2 pi before exponentiating, so Gamma keeps its relative accuracy when
|log Gamma| is in the hundreds. Everything is vectorized over numpy arrays;
scalars in give scalars out.
"""

import math
from typing import Tuple, Union

import numpy as np

from errors import PoleError

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = np.array(
    [
        0.99999999999999709182,
        57.156235665862923517,
        -59.597960355475491248,
        14.136097974741747174,
        -0.49191381609762019978,
        0.33994649984811888699e-4,
        0.46523628927048575665e-4,
        -0.98374475304879564677e-4,
        0.15808870322491248884e-3,
        -0.21026444172410488319e-3,
        0.21743961811521264320e-3,
        -0.16431810653676389022e-3,
        0.84418223983852743293e-4,
        -0.26190838401581408670e-4,
        0.36899182659531622704e-5,
    ]
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_LOG_TWO = math.log(2.0)

# n * _LN2_HI is exact for |n| < 2^20
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10
_PI_HI = math.pi
_PI_LO = 1.2246467991473532e-16
_TWO_PI_HI = 2.0 * math.pi
_TWO_PI_LO = 2.4492935982947064e-16
_SPLITTER = 134217729.0  # 2^27 + 1

# above this |Im| sin(pi z) is evaluated through its exponential form
_SIN_EXP_IM = 4.0

ArrayLike = Union[complex, float, np.ndarray]
DD = Tuple[np.ndarray, np.ndarray]


# ----------------------------------------------------------------------
# error-free transformations
# ----------------------------------------------------------------------


def _two_sum(a, b) -> DD:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b) -> DD:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_sum(*terms: DD) -> DD:
    hi, lo = terms[0]
    for t_hi, t_lo in terms[1:]:
        hi, err = _two_sum(hi, t_hi)
        lo = lo + err + t_lo
    return _two_sum(hi, lo)


def _dd_scale(c, hi, lo) -> DD:
    """c * (hi + lo) for a double c."""
    p, e = _two_prod(c, hi)
    return p, e + c * lo


def _zero(x) -> np.ndarray:
    return np.zeros(np.shape(x))


# ----------------------------------------------------------------------
# log Gamma as double-double real and imaginary parts
# ----------------------------------------------------------------------


def _is_pole(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _lanczos_parts(z: np.ndarray, x_lo=0.0) -> Tuple[DD, DD]:
    """
    log Gamma(z + x_lo) for Re z >= 1/2 from
    Gamma(z) = sqrt(2 pi) t^{z-1/2} e^{-t} S(z), t = z + g - 1/2.
    """
    x, y = z.real, z.imag
    series = np.full(z.shape, _LANCZOS_COEFFS[0], dtype=complex)
    for k in range(1, len(_LANCZOS_COEFFS)):
        series = series + _LANCZOS_COEFFS[k] / (z + (k - 1))
    log_series = np.log(series)

    t_re, t_re_lo = _two_sum(x, _LANCZOS_G - 0.5)
    t_re_lo = t_re_lo + x_lo
    # |t|^2 and log|t| carried to double-double
    sq_re, sq_re_lo = _two_prod(t_re, t_re)
    sq_im, sq_im_lo = _two_prod(y, y)
    q, q_lo = _two_sum(sq_re, sq_im)
    q_lo = q_lo + sq_re_lo + sq_im_lo + 2.0 * t_re * t_re_lo
    mant, expo = np.frexp(q)
    log_q = _dd_sum(
        (expo * _LN2_HI, _zero(q)),
        (np.log(mant), _zero(q)),
        (expo * _LN2_LO + q_lo / q, _zero(q)),
    )
    mod_hi, mod_lo = 0.5 * log_q[0], 0.5 * log_q[1]
    arg_hi = np.arctan2(y, t_re)
    arg_lo = -y * t_re_lo / q

    # z - 1/2 = (u + x_lo) + i y, u exact for Re z >= 1/2
    u = x - 0.5
    real = _dd_sum(
        _dd_scale(u, mod_hi, mod_lo),
        _dd_scale(-y, arg_hi, arg_lo),
        (-t_re, -t_re_lo + x_lo * mod_hi),
        (np.full(np.shape(x), _HALF_LOG_TWO_PI), log_series.real),
    )
    imag = _dd_sum(
        _dd_scale(u, arg_hi, arg_lo),
        _dd_scale(y, mod_hi, mod_lo),
        (-y, log_series.imag + x_lo * arg_hi),
    )
    return real, imag


def _log_sinpi_parts(z: np.ndarray) -> Tuple[DD, DD]:
    """A branch of log sin(pi z) as double-double parts."""
    shift = np.round(z.real)
    a, b = z.real - shift, z.imag
    real_hi, real_lo = _zero(a), _zero(a)
    imag_hi, imag_lo = _zero(a), _zero(a)

    near = np.abs(b) <= _SIN_EXP_IM
    if near.any():
        val = np.log(np.sin(np.pi * (a[near] + 1j * b[near])))
        real_hi[near], imag_hi[near] = val.real, val.imag
    far = ~near
    if far.any():
        bf, af = np.abs(b[far]), a[far]
        flip = b[far] < 0
        af = np.where(flip, -af, af)
        # sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w}) for Im w > 0
        tail = np.log(1.0 - np.exp(2j * np.pi * (af + 1j * bf)))
        hi, lo = _dd_sum(_dd_scale(bf, _PI_HI, _PI_LO), (-_LOG_TWO + tail.real, _zero(bf)))
        real_hi[far], real_lo[far] = hi, lo
        ihi, ilo = _dd_sum(_dd_scale(-af, _PI_HI, _PI_LO), (0.5 * math.pi + tail.imag, _zero(bf)))
        imag_hi[far] = np.where(flip, -ihi, ihi)
        imag_lo[far] = np.where(flip, -ilo, ilo)
    # sin(pi z) = (-1)^shift sin(pi w)
    imag = _dd_sum((imag_hi, imag_lo), _dd_scale(shift, _PI_HI, _PI_LO))
    return (real_hi, real_lo), imag


def _loggamma_parts(z: np.ndarray) -> Tuple[DD, DD]:
    if _is_pole(z).any():
        raise PoleError(f"Gamma has a pole at {z[_is_pole(z)][0].real:g}")
    re_hi, re_lo = _zero(z), _zero(z)
    im_hi, im_lo = _zero(z), _zero(z)
    left = z.real < 0.5
    right = ~left
    if right.any():
        (r_hi, r_lo), (i_hi, i_lo) = _lanczos_parts(z[right])
        re_hi[right], re_lo[right], im_hi[right], im_lo[right] = r_hi, r_lo, i_hi, i_lo
    if left.any():
        w = z[left]
        (s_re, s_im) = _log_sinpi_parts(w)
        one_minus, one_minus_lo = _two_sum(1.0, -w.real)
        (g_re, g_im) = _lanczos_parts(one_minus + 1j * -w.imag, one_minus_lo)
        r_hi, r_lo = _dd_sum(
            (np.full(w.shape, _LOG_PI), _zero(w.real)), (-s_re[0], -s_re[1]), (-g_re[0], -g_re[1])
        )
        i_hi, i_lo = _dd_sum((-s_im[0], -s_im[1]), (-g_im[0], -g_im[1]))
        re_hi[left], re_lo[left], im_hi[left], im_lo[left] = r_hi, r_lo, i_hi, i_lo
    return (re_hi, re_lo), (im_hi, im_lo)


def _reduce_phase(hi: np.ndarray, lo: np.ndarray) -> np.ndarray:
    """(hi + lo) mod 2 pi, into [-pi, pi]."""
    k = np.round(hi / _TWO_PI_HI)
    p, e = _two_prod(k, _TWO_PI_HI)
    return (hi - p) + (lo - e - k * _TWO_PI_LO)


def _exp_parts(real: DD, imag: DD, sign: float) -> np.ndarray:
    modulus = np.exp(sign * real[0]) * np.exp(sign * real[1])
    phase = sign * _reduce_phase(*imag)
    return modulus * (np.cos(phase) + 1j * np.sin(phase))


def _as_complex_array(z) -> Tuple[np.ndarray, bool]:
    return np.atleast_1d(np.asarray(z, dtype=complex)), np.isscalar(z)


# ----------------------------------------------------------------------
# public functions
# ----------------------------------------------------------------------


def loggamma(z: ArrayLike) -> ArrayLike:
    """
    A branch of log Gamma(z); exp of it is Gamma(z).

    Args:
        z: complex scalar or array, no non-positive integers

    Returns:
        complex scalar or array

    Raises:
        PoleError: at non-positive integers
    """
    zz, scalar = _as_complex_array(z)
    (re_hi, re_lo), (im_hi, im_lo) = _loggamma_parts(zz)
    out = (re_hi + re_lo) + 1j * (im_hi + im_lo)
    return out[0] if scalar else out


def gamma(z: ArrayLike) -> ArrayLike:
    """Gamma(z); real input gives real output."""
    zz, scalar = _as_complex_array(z)
    value = _exp_parts(*_loggamma_parts(zz), 1.0)
    if np.isrealobj(np.asarray(z)):
        value = np.real(value)
    return value[0] if scalar else value


def rgamma(z: ArrayLike) -> ArrayLike:
    """1/Gamma(z), entire: zero at the non-positive integers."""
    zz, scalar = _as_complex_array(z)
    poles = _is_pole(zz)
    out = np.zeros(zz.shape, dtype=complex)
    if (~poles).any():
        out[~poles] = _exp_parts(*_loggamma_parts(zz[~poles]), -1.0)
    if np.isrealobj(np.asarray(z)):
        out = np.real(out)
    return out[0] if scalar else out


def gamma_product(upper, lower=()) -> complex:
    """prod Gamma(upper) / prod Gamma(lower); a pole in lower gives 0."""
    value = 1.0 + 0j
    if len(upper):
        value *= np.exp(np.sum(loggamma(np.asarray(upper, dtype=complex))))
    for z in lower:
        value *= rgamma(complex(z))
    return value
