import os
from dotenv import load_dotenv

load_dotenv()

# Decoding
MAX_ITERATIONS = int(os.getenv('MAX_ITERATIONS', 200))
MIN_SUM_ALPHA = float(os.getenv('MIN_SUM_ALPHA', 0.75))
STOP_WINDOW = os.getenv('STOP_WINDOW', 'n')  # Options: n (codeword length), m (check count)

# Simulation
MIN_FRAME_ERRORS = int(os.getenv('MIN_FRAME_ERRORS', 100))
MAX_FRAMES = int(os.getenv('MAX_FRAMES', 100000))
SWEEP_BATCH_SIZE = int(os.getenv('SWEEP_BATCH_SIZE', 32))
THREADS = int(os.getenv('THREADS', os.cpu_count() or 1))

# Complexity model
REGISTER_AREA_FACTOR = float(os.getenv('REGISTER_AREA_FACTOR', 10))

# Service
CODES_DIR = os.getenv('CODES_DIR', 'codes')
CODE_CACHE_TTL = int(os.getenv('CODE_CACHE_TTL', 300))
PORT = int(os.getenv('PORT', 8005))

# Logging
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')  # Options: DEBUG, INFO, PRODUCTION, WARNING, ERROR
LOG_FILE = os.getenv('LOG_FILE', 'logs/app.log')
PROCESSING_LOG_DIR = os.getenv('PROCESSING_LOG_DIR', 'logs/processing')
PROCESSING_LOG_ENABLED = os.getenv('PROCESSING_LOG_ENABLED', 'true').lower() == 'true'
