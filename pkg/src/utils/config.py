import os
from dotenv import load_dotenv

load_dotenv()

# Largest generator accepted by new_monoid (DP tables are sized by it)
MAX_GENERATOR = int(os.getenv("ELASTIC_MAX_GENERATOR", 10**6))

# factorizations() refuses elements with more than this many g_1-multiples
ENUMERATION_LIMIT = int(os.getenv("ELASTIC_ENUMERATION_LIMIT", 10**7))

# Largest element whose length set is built by the bitset table
LENGTH_SET_LIMIT = int(os.getenv("ELASTIC_LENGTH_SET_LIMIT", 200000))

# Default sequence horizon for compare_profiles
DEFAULT_T_MAX = int(os.getenv("ELASTIC_T_MAX", 50))

# Worker threads for bulk evaluation; 1 keeps everything sequential
WORKERS = int(os.getenv("ELASTIC_WORKERS", 1))

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

# SVG plot geometry, in points (72 per inch) so the viewBox is 800x600
SVG_WIDTH = 800
SVG_HEIGHT = 600
SVG_MARGIN = 40
SVG_POINT_RADIUS = 2
SVG_POINT_COLOR = "black"
SVG_HIGHLIGHT_COLOR = "red"
# Fixed salt keeps matplotlib's generated SVG ids stable between runs
SVG_HASH_SALT = "elastic"

# CSV header for the stats command
STATS_HEADER = ["n", "max_len", "min_len", "rho_num", "rho_den"]

# Fixture monoids exercised by the verification suites
FIXTURE_MONOIDS = [
    [3, 5],
    [3, 5, 7],
    [7, 41],
    [20, 21, 45],
    [7, 12, 17, 22],
    [5, 16, 17, 18, 19],
    [6, 10, 13, 14],
]
