#!/usr/bin/env python3
# Copyright 2026 The snaplab Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the synthetic function corpus into scenarios/corpus/.

The workloads are synthetic analogs of ten serverless functions across four
language runtimes. They do not reproduce any real runtime; page counts and
compute times are calibration constants chosen so that base images, diff
sizes and the short/long execution split behave like the functions they are
named after.

Layout of every workload (page ids, 4 KiB pages, 32768 pages of memory):

  kernel         write [0, 2048), 120 ms
  os_init        write [2048, 3072), 80 ms
  runtime        write [3072, N), rewrite [0, 64), read [2048, 2176)
  function_init  mount AppFS; write [N, N+D); rewrite [N-O, N);
                 read [N, N+min(64, D)); compute F
  execution      read base [N-O-BW-BT, N-O-BW); read diff [N, N+WS);
                 write diff [N, N+WS/4); write base [N-O-BW, N-O);
                 write+read 256-page heap at N+D; compute X

N is the language's runtime footprint, so the base image is exactly N pages.
AppFS backs [N, N+D).
"""

import hashlib
import json
import pathlib

MEMORY_PAGES = 32768
PAGE_SIZE = 4096
HEAP_PAGES = 256

# language tag -> (runtime footprint N in pages, runtime init compute in ms)
LANGUAGES = {
    "python3": (10240, 450),
    "nodejs": (15360, 520),
    "java": (15360, 600),
    "go": (9216, 280),
}

# name, language, D, O, F ms, WS, BT, BW, X ms, execution class
FUNCTIONS = [
    ("lorem", "python3", 560, 40, 45, 320, 4500, 120, 3, "short"),
    ("thumbnail", "python3", 1900, 100, 140, 900, 5500, 400, 20, "short"),
    ("audio-fingerprint", "python3", 3350, 150, 300, 1400, 6000, 350, 15, "short"),
    ("sentiment-analysis", "go", 2480, 120, 300, 1200, 5000, 1300, 12, "short"),
    ("matmul", "java", 1140, 60, 40, 600, 6500, 900, 15, "short"),
    ("tpcc", "java", 1440, 60, 50, 700, 6000, 300, 2500, "long"),
    ("ocr", "nodejs", 860, 40, 35, 400, 5500, 200, 2000, "long"),
    ("img-resize", "nodejs", 2900, 100, 350, 1300, 7000, 600, 20, "short"),
    ("alexa-door", "nodejs", 3100, 100, 300, 1600, 6500, 250, 14, "short"),
    ("alexa-reminder", "nodejs", 1540, 60, 115, 800, 6000, 500, 15, "short"),
]


def seed(*parts):
    digest = hashlib.sha256("/".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def write(start, count, step_seed):
    return {"type": "write", "start_page": start, "page_count": count,
            "step_seed": step_seed}


def read(start, count):
    return {"type": "read", "start_page": start, "page_count": count}


def compute(ms):
    return {"type": "compute", "duration_us": ms * 1000}


def base_phases(lang):
    n, runtime_ms = LANGUAGES[lang]
    return [
        {"name": "kernel-boot", "provenance": "kernel",
         "steps": [write(0, 2048, seed(lang, "kernel", 0)), compute(120)]},
        {"name": "os-init", "provenance": "os_init",
         "steps": [write(2048, 1024, seed(lang, "os_init", 0)), compute(80)]},
        {"name": "runtime-init", "provenance": "runtime",
         "steps": [write(3072, n - 3072, seed(lang, "runtime", 0)),
                   write(0, 64, seed(lang, "runtime", 1)),
                   read(2048, 128),
                   compute(runtime_ms)]},
    ]


def workload(name, lang, d, o, f_ms, ws, bt, bw, x_ms):
    n, _ = LANGUAGES[lang]
    function_init = {
        "name": "function-init", "provenance": "function_init",
        "steps": [{"type": "mount_appfs"},
                  write(n, d, seed(name, "function_init", 0)),
                  write(n - o, o, seed(name, "function_init", 1)),
                  read(n, min(64, d)),
                  compute(f_ms)]}
    heap = n + d
    execution = {
        "name": "handle-request", "provenance": "execution",
        "steps": [read(n - o - bw - bt, bt),
                  read(n, ws),
                  write(n, ws // 4, seed(name, "execution", 0)),
                  write(n - o - bw, bw, seed(name, "execution", 1)),
                  write(heap, HEAP_PAGES, seed(name, "execution", 2)),
                  read(heap, HEAP_PAGES),
                  compute(x_ms)]}
    return {
        "name": name,
        "language_tag": lang,
        "workload_seed": seed("workload", lang),
        "memory_pages": MEMORY_PAGES,
        "page_size": PAGE_SIZE,
        "appfs_pages": {"start_page": n, "page_count": d},
        "phases": base_phases(lang) + [function_init, execution],
    }


def main():
    out = pathlib.Path(__file__).resolve().parent / "corpus"
    out.mkdir(exist_ok=True)
    index = {"functions": []}
    for name, lang, d, o, f_ms, ws, bt, bw, x_ms, klass in FUNCTIONS:
        doc = workload(name, lang, d, o, f_ms, ws, bt, bw, x_ms)
        (out / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
        index["functions"].append(
            {"name": name, "spec": f"{name}.json", "execution_class": klass})
    (out / "index.json").write_text(json.dumps(index, indent=2) + "\n")


if __name__ == "__main__":
    main()
