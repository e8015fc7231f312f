# SPDX-License-Identifier: Apache-2.0
"""knotdoa: knot-path detection, estimation and grid matching for single-snapshot DoA."""

try:
    from ._knotdoa import *  # noqa: F401,F403
    from ._knotdoa import __version__  # noqa: F401
except ImportError:  # build-tree layout: the extension sits next to the package
    from _knotdoa import *  # noqa: F401,F403
    from _knotdoa import __version__  # noqa: F401
