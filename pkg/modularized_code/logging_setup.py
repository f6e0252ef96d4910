"""
Logging configuration for the DVNUG frame toolkit.
"""
import logging

import config
from utils.helpers import print_with_timestamp

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'


def _cloud_handler(formatter):
    """
    Build a Google Cloud Logging handler from the configured service account key.

    Args:
        formatter (logging.Formatter): Formatter shared with the console handler

    Returns:
        logging.Handler: Cloud Logging handler
    """
    from google.cloud import logging as cloud_logging
    from google.cloud.logging_v2.handlers import CloudLoggingHandler
    from google.oauth2 import service_account

    print_with_timestamp("Setting up Google Cloud Logging client")
    credentials = service_account.Credentials.from_service_account_file(config.CLOUD_LOGGING_KEY_PATH)
    cloud_client = cloud_logging.Client(credentials=credentials, project=config.PROJECT_ID)

    cloud_handler = CloudLoggingHandler(cloud_client)
    cloud_handler.setFormatter(formatter)
    return cloud_handler


def setup_logging(level=None):
    """
    Set up console logging, plus Google Cloud Logging when a key file is configured.

    Args:
        level (str): Optional level name overriding config.LOG_LEVEL

    Returns:
        logging.Logger: Configured root logger
    """
    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)

    # Configure the root logger
    logger = logging.getLogger()
    logger.setLevel(level or config.LOG_LEVEL)
    logger.handlers = [console_handler]

    if config.CLOUD_LOGGING_KEY_PATH:
        logger.addHandler(_cloud_handler(formatter))
        print_with_timestamp("Logger configured with Cloud Logging handler")

    return logger
