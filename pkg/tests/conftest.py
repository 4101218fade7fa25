import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from synth import write_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus_dirs(tmp_path_factory):
    """Synthetic corpus written to disk once per session: (images, gt)."""
    root = tmp_path_factory.mktemp("corpus")
    write_corpus(root)
    return root / "images", root / "gt"
