#
#   unramified - exact unramified local factors for quadratic space pairs
#   Copyright (C) 2024 unramified contributors
#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU Lesser General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU Lesser General Public License for more details.
#
#   You should have received a copy of the GNU Lesser General Public License
#   along with this program.  If not, see <http://www.gnu.org/licenses/>.

import csv
import io
import json
import logging
import math

import numpy as np
import yaml
from sympy import isprime

from .localfactor import LocalFactorRequest
from .weil import QuadraticSpacePair, PointY, hyperbolic_point
from .utils import public


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


@public
class ConfigError(ValueError):
    pass


def _complex(x):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ConfigError("complex values are [re, im] pairs, got "
                              "{!r}".format(x))
        return complex(float(x[0]), float(x[1]))
    try:
        return complex(x)
    except (TypeError, ValueError):
        raise ConfigError("not a complex number: {!r}".format(x))


def _hyperbolic_gram(d):
    return [[1 if i ^ 1 == j else 0 for j in range(d)] for i in range(d)]


_CHOICES = {
    "format": ("json", "csv", "table"),
    "d_limit": ("n", "n-1"),
    "bessel_normalization": ("spherical", "lemma"),
    "alpha_reading": ("profile", "displayed"),
    "coefficient_sign": ("stated", "integrand"),
    "bf0_reading": ("i<j", "i<=j"),
}


@public
class RunConfig:
    """All inputs of a run, validated on construction.

    `chi` is "formal" or a list of complex Satake parameters, `s` is
    "symbolic" (or None) or a complex number.
    """
    def __init__(self, p=3, precision=20, n=1, d1=2, d2=4, gram1=None,
                 gram2=None, y1=None, y2=None, chi="formal", chi_prime=1,
                 s=None, kmax=4, window=None, threads=1, seed=0,
                 format="json", suites=None, d_limit="n",
                 bessel_normalization="spherical", alpha_reading="profile",
                 coefficient_sign="stated", c1=None, c2=None,
                 samples=1000, bf0_reading="i<j"):
        self.p = int(p)
        self.precision = int(precision)
        self.n = int(n)
        self.d1, self.d2 = int(d1), int(d2)
        self.gram1, self.gram2 = gram1, gram2
        self.y1, self.y2 = y1, y2
        self.chi = chi
        self.chi_prime = chi_prime
        self.s = None if s in (None, "symbolic") else s
        self.kmax = int(kmax)
        self.window = None if window is None else tuple(int(w) for w in
                                                        window)
        self.threads = int(threads)
        self.seed = int(seed)
        self.format = format
        self.suites = None if suites is None else list(suites)
        self.d_limit = d_limit
        self.bessel_normalization = bessel_normalization
        self.alpha_reading = alpha_reading
        self.coefficient_sign = coefficient_sign
        self.c1, self.c2 = c1, c2
        self.samples = int(samples)
        self.bf0_reading = bf0_reading
        self.validate()

    def validate(self):
        if self.p < 3 or not isprime(self.p):
            raise ConfigError("p must be an odd prime, got {}".format(self.p))
        if not 1 <= self.n <= 6:
            raise ConfigError("n must lie in [1, 6], got {}".format(self.n))
        for name in ("d1", "d2"):
            d = getattr(self, name)
            if d <= 0 or d % 2:
                raise ConfigError("{} must be even and positive, got "
                                  "{}".format(name, d))
        if not self.d2 > self.d1:
            raise ConfigError("d2 > d1 is required for the local integral, "
                              "got d1 = {}, d2 = {}".format(self.d1, self.d2))
        if (self.y1 is None) != (self.y2 is None):
            raise ConfigError("give both y1 and y2 or neither")
        for key, choices in _CHOICES.items():
            if getattr(self, key) not in choices:
                raise ConfigError("{} must be one of {}, got {!r}".format(
                    key, ", ".join(choices), getattr(self, key)))
        if self.chi != "formal":
            if not isinstance(self.chi, (list, tuple)) or \
                    len(self.chi) != self.n:
                raise ConfigError("chi must be 'formal' or a list of {} "
                                  "values".format(self.n))
            self.chi = [_complex(c) for c in self.chi]
            if any(c == 0 for c in self.chi):
                raise ConfigError("Satake parameters must be nonzero")
            if self.s is None:
                raise ConfigError("numeric chi needs a numeric s")
        if self.s is not None:
            self.s = _complex(self.s)
        if self.window is not None and (len(self.window) != 2 or
                                        sum(self.window) < 0):
            raise ConfigError("window must be [M, M'] with M + M' >= 0")
        if self.kmax < 0 or self.threads < 1 or self.samples < 1:
            raise ConfigError("kmax must be >= 0, threads and samples >= 1")

    @property
    def numeric(self):
        return self.chi != "formal"

    def update(self, **kwargs):
        """A new config with `kwargs` overriding, None values ignored."""
        data = self.dict()
        data.update((k, v) for k, v in kwargs.items() if v is not None)
        return RunConfig(**data)

    def pair(self):
        gram1 = self.gram1 or _hyperbolic_gram(self.d1)
        gram2 = self.gram2 or _hyperbolic_gram(self.d2)
        return QuadraticSpacePair(self.p, gram1, gram2, self.precision)

    def point(self, pair=None):
        pair = pair or self.pair()
        if self.y1 is None:
            return hyperbolic_point(pair)
        return PointY(pair, self.y1, self.y2)

    def chi_values(self, n=None):
        """Numeric Satake parameters; a formal config draws seeded unitary
        ones."""
        n = self.n if n is None else n
        if self.numeric and len(self.chi) == n:
            return list(self.chi)
        rng = np.random.RandomState(self.seed)
        return list(np.exp(1j*rng.uniform(0, 2*math.pi, n)))

    def s_value(self):
        return 2. if self.s is None else self.s

    def request(self, check_region=True):
        return LocalFactorRequest(
            self.point(), self.n,
            chi=self.chi if self.numeric else None,
            s=self.s if self.numeric else None,
            chi_prime=_complex(self.chi_prime) if self.numeric
            else self.chi_prime,
            kmax=self.kmax, d_limit=self.d_limit,
            normalization=self.bessel_normalization,
            alpha_reading=self.alpha_reading,
            coefficient_sign=self.coefficient_sign,
            c1=self.c1, c2=self.c2, check_region=check_region)

    def dict(self):
        def enc(c):
            c = complex(c)
            return [c.real, c.imag]
        return {"p": self.p, "precision": self.precision, "n": self.n,
                "d1": self.d1, "d2": self.d2, "gram1": self.gram1,
                "gram2": self.gram2, "y1": self.y1, "y2": self.y2,
                "chi": self.chi if not self.numeric else [
                    enc(c) for c in self.chi],
                "chi_prime": self.chi_prime if not isinstance(
                    self.chi_prime, complex) else enc(self.chi_prime),
                "s": None if self.s is None else enc(self.s),
                "kmax": self.kmax,
                "window": None if self.window is None else list(self.window),
                "threads": self.threads, "seed": self.seed,
                "format": self.format, "suites": self.suites,
                "d_limit": self.d_limit,
                "bessel_normalization": self.bessel_normalization,
                "alpha_reading": self.alpha_reading,
                "coefficient_sign": self.coefficient_sign,
                "c1": self.c1, "c2": self.c2, "samples": self.samples,
                "bf0_reading": self.bf0_reading}


def _config_from_dict(dat):
    if dat is None:
        dat = {}
    if not isinstance(dat, dict):
        raise ConfigError("configuration must be a mapping")
    dat = dict(dat)
    if dat.pop("type", "config") != "config":
        raise ConfigError("not a run configuration")
    try:
        return RunConfig(**dat)
    except TypeError as e:
        raise ConfigError("unknown configuration key: {}".format(e))


@public
def config_from_yaml(text):
    try:
        dat = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError("invalid YAML: {}".format(e))
    return _config_from_dict(dat)


@public
def config_to_yaml(config):
    return yaml.safe_dump(config.dict(), default_flow_style=False)


@public
def config_from_json(text):
    try:
        dat = json.loads(text)
    except ValueError as e:
        raise ConfigError("invalid JSON: {}".format(e))
    return _config_from_dict(dat)


@public
def config_from_file(path):
    with open(path) as f:
        text = f.read()
    logger.info("configuration from %s", path)
    if path.endswith(".json"):
        return config_from_json(text)
    return config_from_yaml(text)


def _dumps(dat):
    return json.dumps(dat, sort_keys=True, indent=1)


@public
def report_to_json(reports, config=None):
    """Byte-stable JSON of a verify run."""
    dat = {"version": SCHEMA_VERSION,
           "reports": [r.dict() for r in reports],
           "passed": all(r.passed for r in reports if r.gated)}
    if config is not None:
        dat["config"] = config.dict()
    return _dumps(dat)


@public
def series_to_json(result, request=None):
    dat = {"version": SCHEMA_VERSION, "series": result.dict()}
    if request is not None:
        dat["request"] = request.dict()
    return _dumps(dat)


@public
def matrix_to_json(matrices, checks=None):
    """name -> RingMatrix as nested lists of entry strings."""
    dat = {"version": SCHEMA_VERSION,
           "matrices": {k: m.to_data() for k, m in matrices.items()}}
    if checks is not None:
        dat["checks"] = [[name, bool(ok)] for name, ok in checks]
    return _dumps(dat)


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return "{:.12g}".format(x)
    if isinstance(x, complex):
        return "{:.12g}{:+.12g}j".format(x.real, x.imag)
    return str(x)


def _csv(header, rows):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    return out.getvalue()


def _table(header, rows):
    rows = [[_fmt(x) for x in row] for row in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows
              else len(str(h)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-"*w for w in widths))
    for r in rows:
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


_REPORT_HEADER = ["name", "passed", "gated", "abs_err", "rel_err", "window"]


def _report_rows(reports):
    for r in reports:
        yield [r.name, r.passed, r.gated, r.abs_err, r.rel_err,
               None if r.window is None else " ".join(
                   _fmt(w) for w in r.window)]


@public
def reports_to_csv(reports):
    return _csv(_REPORT_HEADER, _report_rows(reports))


@public
def reports_to_table(reports):
    return _table(_REPORT_HEADER, list(_report_rows(reports)))


_SERIES_HEADER = ["k", "term", "partial"]


def _series_rows(result):
    for (k, t), (_, s) in zip(result.terms, result.partials):
        yield [k, t, s]


@public
def series_to_csv(result):
    return _csv(_SERIES_HEADER, _series_rows(result))


@public
def series_to_table(result):
    text = _table(_SERIES_HEADER, list(_series_rows(result)))
    if result.tail is not None:
        text += "tail bound: {}\n".format(_fmt(result.tail))
    if not result.region_ok:
        text += "outside the convergence region:\n"
        text += "".join("  {}\n".format(v) for v in result.violations)
    return text


@public
def render_reports(reports, fmt, config=None):
    if fmt == "json":
        return report_to_json(reports, config) + "\n"
    if fmt == "csv":
        return reports_to_csv(reports)
    return reports_to_table(reports)


@public
def render_series(result, fmt, request=None):
    if fmt == "json":
        return series_to_json(result, request) + "\n"
    if fmt == "csv":
        return series_to_csv(result)
    return series_to_table(result)


@public
def render_rows(header, rows, fmt):
    """Generic table output for the grid subcommands."""
    rows = list(rows)
    if fmt == "json":
        def enc(x):
            if isinstance(x, complex):
                return [x.real, x.imag]
            if isinstance(x, (int, float, bool)) or x is None:
                return x
            if isinstance(x, (list, tuple)):
                return [enc(y) for y in x]
            return str(x)
        return _dumps({"version": SCHEMA_VERSION, "header": header,
                       "rows": [[enc(x) for x in r] for r in rows]}) + "\n"
    if fmt == "csv":
        return _csv(header, rows)
    return _table(header, rows)
