"""
Report output module for the DVNUG frame toolkit.

Reports are written locally as canonical JSON. When a bucket is configured the
same bytes are also uploaded to Google Cloud Storage.
"""
import csv
import logging
import os

import config
from utils.helpers import canonical_json, print_with_timestamp

logger = logging.getLogger(__name__)


def save_to_gcs(text, filename):
    """
    Upload report text to Google Cloud Storage.

    Args:
        text (str): Canonical JSON text
        filename (str): Object name below config.REPORT_PREFIX

    Returns:
        bool: True if the upload succeeded, False otherwise
    """
    from google.cloud import storage

    target = f"gs://{config.REPORT_BUCKET}/{config.REPORT_PREFIX}{filename}"
    logger.info(f"Uploading report to {target}")
    try:
        storage_client = storage.Client(project=config.PROJECT_ID)
        bucket = storage_client.bucket(config.REPORT_BUCKET)
        blob = bucket.blob(config.REPORT_PREFIX + filename)
        blob.upload_from_string(text, content_type="application/json")
        print_with_timestamp(f"Successfully saved to {target}")
        return True
    except Exception as e:
        logger.error(f"Failed to save to GCS: {str(e)}")
        print_with_timestamp(f"ERROR: Failed to save to GCS: {str(e)}")
        return False


def write_report(data, path):
    """
    Write a report as canonical JSON, uploading a copy if REPORT_BUCKET is set.

    Args:
        data (dict): JSON-compatible report
        path (str): Local output path

    Returns:
        str: The JSON text written
    """
    text = canonical_json(data)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.info(f"Wrote report to {path}")
    if config.REPORT_BUCKET:
        save_to_gcs(text, os.path.basename(path))
    return text


def write_trace_csv(trace, path):
    """
    Write per-ξ singular values with header xi,sigma_min,sigma_max.

    Args:
        trace (list): TracePoints
        path (str): Output path
    """
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["xi", "sigma_min", "sigma_max"])
        for point in trace:
            writer.writerow([repr(point.xi), repr(point.sigma_min), repr(point.sigma_max)])
    logger.info(f"Wrote {len(trace)} trace rows to {path}")
