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

from .utils import *
from .ring import *
from .padic import *
from .groups import *
from .weil import *
from .whittaker import *
from .bessel import *
from .localfactor import *
from .oracle import *

from .formats import (RunConfig, ConfigError,
                      config_from_yaml, config_to_yaml,
                      config_from_json, config_from_file,
                      report_to_json, series_to_json, matrix_to_json)
