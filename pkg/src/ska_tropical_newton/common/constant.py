from os import getenv

LOG_LEVEL = getenv("LOG_LEVEL", "INFO")
PRODUCTION = getenv("PRODUCTION", "false").lower() == "true"

DEFAULT_PARALLELISM = int(getenv("TNP_PARALLELISM", "1"))
MAX_GROUP_ORDER = int(getenv("TNP_MAX_GROUP_ORDER", "1000000"))
MAX_GENERICITY_RETRIES = int(getenv("TNP_MAX_GENERICITY_RETRIES", "64"))
MAX_SAMPLE_RETRIES = int(getenv("TNP_MAX_SAMPLE_RETRIES", "32"))
HULL_MAX_POINTS = int(getenv("TNP_HULL_MAX_POINTS", "10000"))
HULL_MAX_DIM = int(getenv("TNP_HULL_MAX_DIM", "6"))
DD_MAX_RAYS = int(getenv("TNP_DD_MAX_RAYS", "200"))
DD_MAX_DIM = int(getenv("TNP_DD_MAX_DIM", "16"))
MAX_COMPLETION_ROUNDS = int(getenv("TNP_MAX_COMPLETION_ROUNDS", "10000"))

HYPEROCTAHEDRAL_MAX_RANK = 8
PERTURBATION_SPREAD = 7
