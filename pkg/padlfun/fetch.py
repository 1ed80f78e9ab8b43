"""
Download of q-expansion coefficient files.
"""

from __future__ import absolute_import, division

import hashlib
import logging
import os
import tempfile

import requests

from .errors import PadlfunError

LOGGER = logging.getLogger("padlfun.fetch")

DATA_DIR_ENV = "PADLFUN_DATA_DIR"

CHUNK_SIZE = 1024


def data_dir():
    """
    Where fetched files go: $PADLFUN_DATA_DIR, or ~/.padlfun.
    """
    return os.environ.get(
        DATA_DIR_ENV, os.path.join(os.path.expanduser("~"), ".padlfun"),
    )


def fetch_coefficients(url, md5hash=None, dest=None):
    """
    Download a coefficient file.

    The file is streamed into a temporary file next to its destination and
    moved into place only once its digest matches.

    Parameters
    ----------
    url : str
    md5hash : str, optional
        Expected hex digest.
    dest : str, optional
        Output path; defaults to the file name of the url inside
        :func:`data_dir`.

    Returns
    -------
    str
        The path written.
    """
    if dest is None:
        filename = url.rsplit("/", 1)[1].rsplit("?")[0]
        dest = os.path.join(data_dir(), filename)

    out_dir = os.path.dirname(os.path.abspath(dest))

    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)

    LOGGER.info("Fetching {} to {}".format(url, dest))

    response = requests.get(url, stream=True)

    if not response.ok:
        raise PadlfunError(
            "Unable to download {}: status {}".format(
                url, response.status_code,
            )
        )

    hash_md5 = hashlib.md5()
    fd, tmp_path = tempfile.mkstemp(dir=out_dir, suffix=".part")

    try:
        with os.fdopen(fd, "wb") as f:
            for block in response.iter_content(CHUNK_SIZE):
                if not block:
                    continue

                hash_md5.update(block)
                f.write(block)

        if md5hash is not None and hash_md5.hexdigest() != md5hash:
            LOGGER.warning(
                "MD5 hash of {} does not match record: {} != {}"
                .format(url, md5hash, hash_md5.hexdigest())
            )
            raise PadlfunError(
                "Checksum mismatch for {}".format(url)
            )

        os.replace(tmp_path, dest)
    finally:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)

    LOGGER.debug("md5 {} for {}".format(hash_md5.hexdigest(), dest))

    return dest
