"""Checkpoint I/O: trained weights plus a config echo, as a .npz archive."""

from __future__ import annotations

import json
from dataclasses import asdict

import numpy as np

from .rnn import GruParams, LstmParams, NetworkParams, ReadoutParams, TrainConfig


def save_checkpoint(path, net: NetworkParams, config: TrainConfig | None = None):
    payload = {"meta": np.array(json.dumps({
        "cell_kind": net.cell_kind,
        "layers": net.layers,
        "units": net.units,
        "input_size": net.input_size,
        "config": asdict(config) if config else None,
    }))}
    for k, cell in enumerate(net.cells):
        if net.cell_kind == "lstm":
            payload[f"cell{k}_W"] = cell.W
            payload[f"cell{k}_R"] = cell.R
            payload[f"cell{k}_b"] = cell.b
        else:
            payload[f"cell{k}_W"] = cell.W
            payload[f"cell{k}_R_ur"] = cell.R_ur
            payload[f"cell{k}_R_h"] = cell.R_h
            payload[f"cell{k}_b"] = cell.b
    payload["readout_W_y"] = net.readout.W_y
    payload["readout_b_y"] = net.readout.b_y
    np.savez(path, **payload)


def load_checkpoint(path):
    """Returns (NetworkParams, config dict or None)."""
    with np.load(path, allow_pickle=False) as z:
        meta = json.loads(str(z["meta"]))
        cells = []
        for k in range(meta["layers"]):
            if meta["cell_kind"] == "lstm":
                cells.append(LstmParams(
                    W=z[f"cell{k}_W"], R=z[f"cell{k}_R"], b=z[f"cell{k}_b"]
                ))
            else:
                cells.append(GruParams(
                    W=z[f"cell{k}_W"], R_ur=z[f"cell{k}_R_ur"],
                    R_h=z[f"cell{k}_R_h"], b=z[f"cell{k}_b"]
                ))
        readout = ReadoutParams(W_y=z["readout_W_y"], b_y=z["readout_b_y"])
    net = NetworkParams(cell_kind=meta["cell_kind"], cells=cells, readout=readout)
    return net, meta.get("config")
