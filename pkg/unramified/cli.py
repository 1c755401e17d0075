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

"""Command line entry point.

    unramified verify --suite lemma41
    unramified local-factor --config run.yaml --format table
    unramified embeddings --n 3
"""

import argparse
import logging
import sys

from .bessel import BesselDatum, bessel_value
from .formats import (ConfigError, RunConfig, config_from_file,
                      render_reports, render_series, render_rows,
                      matrix_to_json)
from .groups import (displayed_images, special_elements, is_so,
                     preserves_form)
from .localfactor import RegionError, theorem2_value, c_ks
from .oracle import Suite, default_suites, run_suites
from .whittaker import SatakeParams


logger = logging.getLogger(__name__)


def _window(text):
    try:
        m, mp = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window is M,N, got {!r}".format(
            text))
    return m, mp


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="YAML or JSON run "
                        "configuration")
    common.add_argument("-f", "--format", choices=("json", "csv", "table"),
                        help="output format")
    common.add_argument("--kmax", type=int, help="series cutoff")
    common.add_argument("--window", type=_window, help="oracle window M,N")
    common.add_argument("--threads", type=int, help="integration threads")
    common.add_argument("--seed", type=int, help="sampling seed")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for INFO, -vv for DEBUG")

    p = argparse.ArgumentParser(
        prog="unramified",
        description="Exact unramified local factors for quadratic space "
                    "pairs and their brute-force oracles.")
    sub = p.add_subparsers(dest="command")
    sub.required = True
    v = sub.add_parser("verify", parents=[common],
                       help="run oracle suites")
    v.add_argument("-s", "--suite", action="append",
                   help="suite name, repeatable; one of {}".format(
                       ", ".join(Suite.names())))
    v.add_argument("--samples", type=int, default=None,
                   help="random samples of the embedding checks")
    lf = sub.add_parser("local-factor", parents=[common],
                        help="evaluate the local integral as a k-series")
    lf.add_argument("--no-region-check", action="store_true",
                    help="evaluate outside the convergence region")
    b = sub.add_parser("bessel", parents=[common],
                       help="Bessel function values on (k, 0, ..., 0)")
    b.add_argument("--mu", type=complex, default=None,
                   help="value of the SO2 character at p (formal if unset)")
    e = sub.add_parser("embeddings", parents=[common],
                       help="print and check the embedding matrices")
    e.add_argument("-n", "--n", type=int, default=None,
                   help="rank of H = SO(2n+1)")
    sub.add_parser("series", parents=[common],
                   help="dump the symbolic coefficients C_{k,s}")
    return p


def _config(o):
    config = config_from_file(o.config) if o.config else RunConfig()
    return config.update(format=o.format, kmax=o.kmax, window=o.window,
                         threads=o.threads, seed=o.seed,
                         n=getattr(o, "n", None),
                         samples=getattr(o, "samples", None))


def _verify(o, config):
    names = o.suite or config.suites or default_suites()
    for name in names:
        Suite.make(name)
    reports = run_suites(names, config)
    sys.stdout.write(render_reports(reports, config.format, config))
    failed = [r for r in reports if r.gated and not r.passed]
    for r in failed:
        logger.warning("gated check failed: %s", r.name)
    return 1 if failed else 0


def _local_factor(o, config):
    request = config.request(check_region=not o.no_region_check)
    result = theorem2_value(request)
    sys.stdout.write(render_series(result, config.format, request))
    return 0


def _bessel(o, config):
    if config.numeric:
        params = SatakeParams.numeric(config.chi, config.s, config.p)
    else:
        params = SatakeParams.formal(config.n)
    mu = params.mu if o.mu is None else params.backend.character(o.mu)
    datum = BesselDatum.from_params(
        params, mu=mu, d_limit=config.d_limit,
        normalization=config.bessel_normalization,
        bf0_reading=config.bf0_reading)
    rows = []
    for k in range(config.kmax + 1):
        delta = (k,) + (0,)*(config.n - 1)
        rows.append([delta, bessel_value(datum, delta)])
    sys.stdout.write(render_rows(["delta", "value"], rows, config.format))
    return 0


def _embeddings(o, config):
    n = max(config.n, 2)
    mats = dict(special_elements(n))
    checks = [("{} in SO({})".format(k, 2*n + 1), is_so(mats[k]))
              for k in ("w", "w0", "w0_tilde")]
    checks.append(("w_prime preserves J", preserves_form(mats["w_prime"])))
    for name, (image, printed, cells) in sorted(displayed_images().items()):
        mats[name + "'"] = image
        checks.append(("{}' in SO(5)".format(name), is_so(image)))
        if cells:
            logger.info("%s' differs from the printed matrix at %s", name,
                        cells)
    if config.format == "json":
        sys.stdout.write(matrix_to_json(mats, checks) + "\n")
    else:
        for name in sorted(mats):
            sys.stdout.write("{}:\n{}\n".format(name, mats[name]))
        sys.stdout.write(render_rows(["check", "ok"], checks, config.format))
    return 0 if all(ok for _, ok in checks) else 1


def _series(o, config):
    request = config.update(chi="formal", s="symbolic").request()
    rows = [[k, c_ks(request, k)] for k in range(request.v4,
                                                  config.kmax + 1)]
    sys.stdout.write(render_rows(["k", "C_k"], rows, config.format))
    return 0


_COMMANDS = {"verify": _verify, "local-factor": _local_factor,
             "bessel": _bessel, "embeddings": _embeddings,
             "series": _series}


def run(argv=None):
    """Run a subcommand; 2 on configuration errors, 1 on failed checks."""
    o = _parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(o.verbose, 2)]
    logging.basicConfig(level=level,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config(o)
        return _COMMANDS[o.command](o, config)
    except RegionError as e:
        for v in e.violations:
            sys.stderr.write("violated: {}\n".format(v))
        return 2
    except (ConfigError, KeyError, ValueError, OSError) as e:
        sys.stderr.write("error: {}\n".format(e))
        return 2


def main():
    sys.exit(run())
