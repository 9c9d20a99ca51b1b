#!/usr/bin/env python3
# Copyright 2026 The sidur Authors
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

"""Regenerates france_like_reported.csv.

The testing series ramps up from day 30; ICU occupancy and cumulative deaths
are exact delayed linear maps of the simulated active and cumulative
infections, so a fit recovers the gains and delays below.

    python3 make_france_like_data.py path/to/sidur
"""

import csv
import datetime
import json
import pathlib
import subprocess
import sys
import tempfile

HERE = pathlib.Path(__file__).resolve().parent
START = datetime.date(2020, 1, 24)
DAYS = 200
ICU_GAIN, ICU_DELAY = 0.002, 7
DEATHS_GAIN, DEATHS_DELAY = 0.004, 14


def daily_tests(day):
    if day < 30:
        return 0.0
    return min(45000.0, 500.0 * (day - 30))


def main():
    cli = sys.argv[1]
    scenario = json.loads((HERE / "france_like.json").read_text())
    del scenario["data_path"]
    scenario["policy"] = {
        "kind": "series",
        "daily_tests": [daily_tests(d) for d in range(DAYS)],
    }
    with tempfile.TemporaryDirectory() as tmp:
        path = pathlib.Path(tmp) / "scenario.json"
        path.write_text(json.dumps(scenario))
        subprocess.run([cli, "simulate", "--scenario", str(path),
                        "--out-dir", tmp], check=True,
                       stdout=subprocess.DEVNULL)
        series = {}
        with open(pathlib.Path(tmp) / "trajectory.csv") as f:
            for row in csv.DictReader(f):
                series.setdefault(row["name"], []).append(float(row["value"]))

    n = scenario["population_people"]
    active = [i + d for i, d in zip(series["infected"], series["detected"])]
    cumulative = [n - s for s in series["susceptible"]]
    with open(HERE / "france_like_reported.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "cum_detected", "daily_tests", "icu",
                    "cum_deaths"])
        for day in range(DAYS):
            icu = ICU_GAIN * active[max(day - ICU_DELAY, 0)]
            deaths = DEATHS_GAIN * cumulative[max(day - DEATHS_DELAY, 0)]
            w.writerow([(START + datetime.timedelta(days=day)).isoformat(),
                        f"{series['y1'][day]:.17g}",
                        f"{daily_tests(day):.17g}",
                        f"{icu:.17g}", f"{deaths:.17g}"])


if __name__ == "__main__":
    main()
