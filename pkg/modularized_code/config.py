"""
Configuration module for the DVNUG frame toolkit.
"""
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Analysis defaults (CLI flags override these per invocation)
DEFAULT_GRID = int(os.getenv("DVNUG_GRID", 256))
DEFAULT_TOL = float(os.getenv("DVNUG_TOL", 1e-9))
DEFAULT_SEED = int(os.getenv("DVNUG_SEED", 0))
DEFAULT_TRIALS = int(os.getenv("DVNUG_TRIALS", 100))

# Solver settings
CG_TOL = 1e-10
CG_MAXITER_FACTOR = 10
SVD_TOL = 1e-12

# Random test signals
RANDOM_MAX_SUPPORT = 8
RANDOM_OUTLIER_PROBABILITY = 0.25
RANDOM_OUTLIER_DISTANCE = 64

# Logging settings
LOG_LEVEL = os.getenv("DVNUG_LOG_LEVEL", "INFO")
CLOUD_LOGGING_KEY_PATH = os.getenv("DVNUG_CLOUD_LOGGING_KEY")
PROJECT_ID = os.getenv("PROJECT_ID")

# Report storage
REPORT_BUCKET = os.getenv("DVNUG_REPORT_BUCKET")
REPORT_PREFIX = "dvnug-reports/"
