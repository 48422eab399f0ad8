import os

VERSION = "1.0"

CONF_FILE = os.path.expanduser("~/.grothfock.conf")
CAPS_ENV_VAR = "GROTH_DEFAULT_CAPS"

# default caps: n = max(MIN_DEFAULT_VARS, |λ| + VAR_SLACK), D = |λ| + DEGREE_SLACK
MIN_DEFAULT_VARS = 6
VAR_SLACK = 2
DEGREE_SLACK = 4

# determinants up to this size always use cofactor expansion
COFACTOR_LIMIT = 4

BETA_TEXT = "b"
BETA_LATEX = r"\beta"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3

DEFAULT_SEED = 20240521
RANDOM_INSTANCES = 200
DEFAULT_WORKERS = 4

# verification suite sizes
ROUTE_CAPS = (6, 8)
ROUTE_MAX_LENGTH = 3
ROUTE_MAX_WEIGHT = 6
DUALITY_MAX_WEIGHT = 5
DUALITY_MIN_CAPS = 8
DUALITY_CLASSICAL_WEIGHT = 4
PIERI_ROWS = 4
PIERI_MAX_WEIGHT = 4
PIERI_SERIES_WEIGHT = 3
STABILITY_MAX_RANK = 5
STABILITY_DEGREE_SLACK = 2
KNUTH_MAX_INDEX = 5
KNUTH_MAX_WEIGHT = 6
WICK_INDEX_RANGE = (-6, 6)
