import logging
import os
import sys
from logging.handlers import RotatingFileHandler

from pythonjsonlogger.json import JsonFormatter

from app.core.config import settings

log_dir = settings.LOG_DIR
if not os.path.exists(log_dir):
    os.makedirs(log_dir)

logger = logging.getLogger("lie2_logger")
logger.setLevel(settings.LOG_LEVEL)

if not logger.handlers:
    file_handler = RotatingFileHandler(os.path.join(log_dir, "engine.log"), maxBytes=10**6, backupCount=3)
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s"))

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)
