#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2026 The chipsim Authors
"""Generate the shipped model descriptors under models/.

Layer counts follow the usual inference graphs (LeNet5 on 3-channel 32x32
input, Keras-style ResNet50 / DenseNet121 / VGG16 / MobileNetV2 at 224x224).

The simulator counts parameters as K_h*K_w*C_in*C_out + C_out per conv and
F_in*F_out + F_out per fc. Reference totals additionally carry normalization
statistics (gamma, beta, running mean, running variance) and some graphs omit
conv biases. That difference is folded into the input width of pointwise
(1x1) convolutions whose output width matches the normalized tensor, so every
descriptor lands on the reference total exactly. Each widened layer has a
"+N" suffix on its name.

Run from the repository root:  python3 tools/gen_models.py
"""

import json
import os


def conv(name, k, cin, cout, in_hw, out_hw, stride=1):
    return dict(name=name, kind="conv", kernel=[k, k], channels_in=cin,
                channels_out=cout, in_hw=[in_hw, in_hw], out_hw=[out_hw, out_hw],
                stride=stride)


def fc(name, fin, fout):
    return dict(name=name, kind="fc", kernel=[1, 1], channels_in=fin,
                channels_out=fout, in_hw=[1, 1], out_hw=[1, 1], stride=1)


def params(layers):
    total = 0
    for l in layers:
        kh, kw = l["kernel"]
        total += kh * kw * l["channels_in"] * l["channels_out"] + l["channels_out"]
    return total


def widen(layer, extra):
    layer["channels_in"] += extra
    layer["name"] += "+%d" % extra


def lenet5():
    layers = [
        conv("conv1", 5, 3, 6, 32, 28),
        conv("conv2", 5, 6, 16, 14, 10),
        conv("conv3", 5, 16, 120, 5, 1),
        fc("fc1", 120, 84),
        fc("fc2", 84, 10),
    ]
    notes = ("3-channel 32x32 input; the 1-channel variant totals 61,706, the "
             "extra 300 weights sit in conv1.")
    return "LeNet5", 62006, layers, notes


def vgg16():
    layers = []
    hw = 224
    cin = 3
    for block, (width, reps) in enumerate([(64, 2), (128, 2), (256, 3), (512, 3), (512, 3)], 1):
        for r in range(reps):
            layers.append(conv("block%d_conv%d" % (block, r + 1), 3, cin, width, hw, hw))
            cin = width
        hw //= 2
    layers += [fc("fc1", 7 * 7 * 512, 4096), fc("fc2", 4096, 4096), fc("predictions", 4096, 1000)]
    return "VGG16", 138357544, layers, "No adjustment; conv and fc biases are part of the graph."


def resnet50():
    layers = [conv("conv1", 7, 3, 64, 224, 112, 2)]
    # Each conv is followed by a 4-parameter-per-channel normalization; fold
    # that into +4 input channels on a 1x1 conv of the same output width.
    fold = {}  # layer index -> extra input channels
    pending_stem = 4
    hw = 56
    cin = 64
    stages = [(64, 256, 3, 1), (128, 512, 4, 2), (256, 1024, 6, 2), (512, 2048, 3, 2)]
    for s, (mid, out, blocks, first_stride) in enumerate(stages, 2):
        for b in range(blocks):
            stride = first_stride if b == 0 else 1
            out_hw = hw // stride
            tag = "conv%d_block%d" % (s, b + 1)
            i_reduce = len(layers)
            layers.append(conv(tag + "_1_conv", 1, cin, mid, hw, out_hw, stride))
            layers.append(conv(tag + "_2_conv", 3, mid, mid, out_hw, out_hw))
            i_expand = len(layers)
            layers.append(conv(tag + "_3_conv", 1, mid, out, out_hw, out_hw))
            fold[i_reduce] = 8 + pending_stem  # own norm + the 3x3 norm (same width)
            pending_stem = 0
            fold[i_expand] = 4
            if b == 0:
                fold[len(layers)] = 4
                layers.append(conv(tag + "_0_conv", 1, cin, out, hw, out_hw, stride))
            cin = out
            hw = out_hw
    layers.append(fc("predictions", 2048, 1000))
    for i, extra in fold.items():
        widen(layers[i], extra)
    notes = ("Normalization statistics (4 per channel) folded as extra input "
             "channels on the pointwise conv of matching width.")
    return "ResNet50", 25636712, layers, notes


def densenet121():
    layers = [conv("conv1", 7, 3, 64, 224, 112, 2)]
    hw = 56
    channels = 64
    growth = 32
    bottlenecks = []
    for block, reps in enumerate([6, 12, 24, 16], 2):
        for r in range(reps):
            bottlenecks.append(len(layers))
            layers.append(conv("conv%d_block%d_1_conv" % (block, r + 1), 1, channels, 4 * growth, hw, hw))
            layers.append(conv("conv%d_block%d_2_conv" % (block, r + 1), 3, 4 * growth, growth, hw, hw))
            channels += growth
        if block < 5:
            channels //= 2
            layers.append(conv("pool%d_conv" % block, 1, channels * 2, channels, hw, hw))
            hw //= 2
    layers.append(fc("predictions", channels, 1000))
    target = 8062504
    extra = target - params(layers)
    width = 4 * growth
    assert extra % width == 0, extra
    units = extra // width
    per, rem = divmod(units, len(bottlenecks))
    for n, i in enumerate(bottlenecks):
        widen(layers[i], per + (1 if n < rem else 0))
    notes = ("Pre-activation normalization statistics minus the conv biases "
             "counted by the formula, spread over the 128-wide bottleneck convs.")
    return "DenseNet121", target, layers, notes


def mobilenetv2():
    # Depthwise 3x3 convs are written per group: C_in=1, C_out=C.
    layers = []
    fold = {}
    layers.append(conv("Conv1", 3, 3, 32, 224, 112, 2))
    hw = 112
    cin = 32
    # (expansion, out, repeats, stride)
    cfg = [(1, 16, 1, 1), (6, 24, 2, 2), (6, 32, 3, 2), (6, 64, 4, 2),
           (6, 96, 3, 1), (6, 160, 3, 2), (6, 320, 1, 1)]
    block = 0
    for t, out, reps, first_stride in cfg:
        for r in range(reps):
            stride = first_stride if r == 0 else 1
            out_hw = hw // stride
            tag = "block_%d" % block
            hidden = cin * t
            if t != 1:
                # own norm (4C) minus counted bias (C), plus the depthwise one
                fold[len(layers)] = 6
                layers.append(conv(tag + "_expand", 1, cin, hidden, hw, hw))
            layers.append(conv(tag + "_depthwise", 3, 1, hidden, hw, out_hw, stride))
            proj = len(layers)
            layers.append(conv(tag + "_project", 1, hidden, out, out_hw, out_hw))
            if t == 1:
                # stem (32) + first depthwise (32) at 3 per channel = 192 = 12 * 16
                fold[proj] = 3 + 12
            else:
                fold[proj] = 3
            cin = out
            hw = out_hw
            block += 1
    fold[len(layers)] = 3
    layers.append(conv("Conv_1", 1, 320, 1280, hw, hw))
    layers.append(fc("predictions", 1280, 1000))
    for i, extra in fold.items():
        widen(layers[i], extra)
    notes = ("Depthwise convs written per group (C_in=1). Normalization "
             "statistics net of counted biases (3 per channel) folded as extra "
             "input channels on the pointwise conv of matching width.")
    return "MobileNetV2", 3538984, layers, notes


def emit(builder, path):
    name, declared, layers, notes = builder()
    total = params(layers)
    assert total == declared, (name, total, declared)
    n_conv = sum(1 for l in layers if l["kind"] == "conv")
    n_fc = len(layers) - n_conv
    doc = {
        "name": name,
        "declared_param_count": declared,
        "declared_conv_layers": n_conv,
        "declared_fc_layers": n_fc,
        "weight_bitwidth": 8,
        "activation_bitwidth": 8,
        "notes": notes,
        "layers": layers,
    }
    with open(path, "w") as f:
        f.write("{\n")
        keys = [k for k in doc if k != "layers"]
        for k in keys:
            f.write("  %s: %s,\n" % (json.dumps(k), json.dumps(doc[k])))
        f.write('  "layers": [\n')
        for i, l in enumerate(layers):
            f.write("    " + json.dumps(l) + (",\n" if i + 1 < len(layers) else "\n"))
        f.write("  ]\n}\n")
    print("%-12s %3d conv %d fc %12d params -> %s" % (name, n_conv, n_fc, total, path))


if __name__ == "__main__":
    os.makedirs("models", exist_ok=True)
    emit(lenet5, "models/lenet5.desc")
    emit(resnet50, "models/resnet50.desc")
    emit(densenet121, "models/densenet121.desc")
    emit(vgg16, "models/vgg16.desc")
    emit(mobilenetv2, "models/mobilenetv2.desc")
