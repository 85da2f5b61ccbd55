#!/usr/bin/env python3
# Copyright 2026 The sreval Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the small reference image encoder used by the test suites.

The network is a four-stage strided convolutional tower with global average
pooling and a linear projection. Weights are drawn from a fixed seed, so the
generated file is reproducible. It stands in for a pretrained CLIP image tower
wherever a desk-scale encoder is needed; any exported image tower with the
same input/output contract can replace it through the encoder manifest.

Usage: make_reference_encoder.py <output_dir>
"""

import json
import os
import sys

import numpy as np
import onnx
from onnx import TensorProto, helper, numpy_helper

INPUT_SIZE = 128
EMBEDDING_DIM = 64
SEED = 20231115
# Standard CLIP preprocessing statistics.
MEANS = [0.48145466, 0.4578275, 0.40821073]
STDS = [0.26862954, 0.26130258, 0.27577711]


def conv_weights(rng, out_ch, in_ch, k):
    w = rng.standard_normal((out_ch, in_ch, k, k)).astype(np.float32)
    # Zero-mean filters respond to structure rather than flat brightness.
    w -= w.mean(axis=(2, 3), keepdims=True)
    w /= np.sqrt(in_ch * k * k)
    return w


def build(out_dir):
    rng = np.random.default_rng(SEED)
    stages = [(3, 24, 5), (24, 48, 3), (48, 64, 3), (64, 96, 3)]
    nodes, inits = [], []
    prev = "image"
    for i, (cin, cout, k) in enumerate(stages):
        w = numpy_helper.from_array(conv_weights(rng, cout, cin, k), f"conv{i}_w")
        b = numpy_helper.from_array(
            (0.05 * rng.standard_normal(cout)).astype(np.float32), f"conv{i}_b")
        inits += [w, b]
        nodes.append(helper.make_node(
            "Conv", [prev, w.name, b.name], [f"conv{i}"],
            kernel_shape=[k, k], strides=[2, 2], pads=[k // 2] * 4))
        nodes.append(helper.make_node("Relu", [f"conv{i}"], [f"relu{i}"]))
        prev = f"relu{i}"
    nodes.append(helper.make_node("GlobalAveragePool", [prev], ["pooled"]))
    nodes.append(helper.make_node("Flatten", ["pooled"], ["flat"], axis=1))
    proj = rng.standard_normal((EMBEDDING_DIM, stages[-1][1])).astype(np.float32)
    proj /= np.sqrt(stages[-1][1])
    inits.append(numpy_helper.from_array(proj, "proj_w"))
    inits.append(numpy_helper.from_array(
        np.zeros(EMBEDDING_DIM, dtype=np.float32), "proj_b"))
    nodes.append(helper.make_node(
        "Gemm", ["flat", "proj_w", "proj_b"], ["embedding"], transB=1))

    graph = helper.make_graph(
        nodes, "reference_encoder",
        [helper.make_tensor_value_info(
            "image", TensorProto.FLOAT, ["batch", 3, INPUT_SIZE, INPUT_SIZE])],
        [helper.make_tensor_value_info(
            "embedding", TensorProto.FLOAT, ["batch", EMBEDDING_DIM])],
        inits)
    model = helper.make_model(
        graph, producer_name="sreval",
        opset_imports=[helper.make_opsetid("", 11)])
    model.ir_version = 6
    onnx.checker.check_model(model)
    os.makedirs(out_dir, exist_ok=True)
    onnx.save(model, os.path.join(out_dir, "reference_encoder.onnx"))

    manifest = {
        "model_path": "reference_encoder.onnx",
        "input_size": INPUT_SIZE,
        "resize_method": "bicubic",
        "channel_means": MEANS,
        "channel_stds": STDS,
        "embedding_dim": EMBEDDING_DIM,
    }
    with open(os.path.join(out_dir, "reference_encoder.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    build(sys.argv[1])
