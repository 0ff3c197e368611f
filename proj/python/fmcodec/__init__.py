# Copyright 2026 The fmcodec Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#                 http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Transform-domain compression for CNN feature maps.

Thin python surface over the C++ core: orthonormal DCT transforms,
fixed-point quantization, sparse bitmap (ZVC) coding, the zvc / dct-cm /
dct-2d / asp pipelines behind ``compress``/``decompress``, inverse-transform
weight fusion, and the deterministic synthetic activation generator.
"""

from fmcodec._core import (
    FormatError,
    TruncationError,
    UnsupportedError,
    __version__,
    apply_fused,
    asp,
    canonical_method,
    compress,
    compression_ratio,
    count_transform_macs,
    dct1d,
    dct2d,
    dct_matrix,
    decompress,
    dequantize,
    fuse_weights,
    generate_synthetic,
    idct1d,
    idct2d,
    inspect,
    quantize,
    read_tensor,
    write_tensor,
)

__all__ = [
    "FormatError",
    "TruncationError",
    "UnsupportedError",
    "__version__",
    "apply_fused",
    "asp",
    "canonical_method",
    "compress",
    "compression_ratio",
    "count_transform_macs",
    "dct1d",
    "dct2d",
    "dct_matrix",
    "decompress",
    "dequantize",
    "fuse_weights",
    "generate_synthetic",
    "idct1d",
    "idct2d",
    "inspect",
    "quantize",
    "read_tensor",
    "write_tensor",
]
