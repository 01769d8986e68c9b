"""
rendering of reports into JSON documents and CSV tables

documents are plain dicts rendered by phasenoise.utils.dumps, so every float
goes out with the configured number of significant digits and keys are
sorted. Nothing environment dependent (time, host, paths other than the
ones given on the command line) ever ends up in a document.
"""

import csv
import io

import numpy as np

from phasenoise.extremal import extremal_to_document, finite_or_none
from phasenoise.statefile import state_to_document
from phasenoise.utils import complex_pair, dumps, format_float
from phasenoise.witness import ensemble_to_document

SWEEP_COLUMNS = [
    "parameter",
    "mean_n",
    "var_n",
    "abs_e_minus",
    "phase_noise",
    "lhs_eq8",
    "rhs_eq7",
    "classical_bound",
    "witness",
]

MC_COLUMNS = [
    "index",
    "components",
    "mean_n",
    "phase_noise",
    "classical_bound",
    "margin",
    "chain_minimum",
]

EXTREMAL_COLUMNS = [
    "target_n",
    "mu",
    "phase_noise",
    "scaled_noise",
    "eigen_residual",
    "constraint_residual",
    "iterations",
]


def moments_dict(moments):
    return {
        "mean_n": moments.mean_n,
        "var_n": moments.var_n,
        "e_minus": complex_pair(moments.e_minus),
        "abs_e_minus": moments.abs_e_minus,
        "p0": moments.p0,
        "c_mean": complex_pair(moments.c_mean),
        "s_mean": complex_pair(moments.s_mean),
        "c_var": moments.c_var,
        "s_var": moments.s_var,
    }


def noise_dict(report):
    return {
        "moments": moments_dict(report.moments),
        "phase_noise": report.phase_noise,
        "lhs_eq8": report.lhs_eq8,
        "rhs_eq8": report.rhs_eq8,
        "rhs_eq7": report.rhs_eq7,
        "slack_eq8": report.slack_eq8,
        "slack_eq7": report.slack_eq7,
        "cs_slacks": list(report.cs_slacks),
    }


def witness_dict(report):
    return {
        "mean_n": report.mean_n,
        "e_minus": complex_pair(report.e_minus),
        "phase_noise": report.phase_noise,
        "classical_bound": report.classical_bound,
        "witness": report.witness,
        "nonclassical": report.nonclassical,
    }


def chain_dict(chain):
    return {
        "coherent_bound": chain.coherent_bound,
        "mixture_bound": chain.mixture_bound,
        "photon_number_bound": chain.photon_number_bound,
    }


def state_report_document(spec, state, noise_report, witness_report):
    return {
        "state": spec.to_string(),
        "dim": state.dim,
        "noise": noise_dict(noise_report),
        "witness": witness_dict(witness_report),
    }


def ensemble_report_document(source, ensemble, witness_report, chain):
    return {
        "ensemble": str(source),
        "components": len(ensemble),
        "witness": witness_dict(witness_report),
        "chain_slacks": chain_dict(chain),
    }


def sweep_document(family, parameter, points):
    rows = []

    for point in points:
        row = {"parameter": point.parameter, "state": point.spec.to_string()}

        if point.ok:
            row["noise"] = noise_dict(point.report)
            row["witness"] = witness_dict(point.witness)
        else:
            row["error"] = point.error

        rows.append(row)

    return {"family": family, "parameter": parameter, "points": rows}


def sweep_rows(points):
    """
    one CSV row per successful sweep point, failed points are left out
    """
    return [
        [
            point.parameter,
            point.report.moments.mean_n,
            point.report.moments.var_n,
            point.report.moments.abs_e_minus,
            point.report.phase_noise,
            point.report.lhs_eq8,
            point.report.rhs_eq7,
            point.witness.classical_bound,
            point.witness.witness,
        ]
        for point in points
        if point.ok
    ]


def mc_document(summary):
    return {
        "seed": summary.seed,
        "samples": summary.samples,
        "max_components": summary.max_components,
        "max_alpha": summary.max_alpha,
        "violations": summary.violations,
        "chain_violations": summary.chain_violations,
        "failures": summary.failures,
        "min_margin": summary.min_margin,
        "worst_index": summary.worst_index,
        "worst_case": (
            None
            if summary.worst_case is None
            else ensemble_to_document(summary.worst_case)
        ),
    }


def mc_rows(summary):
    return [
        [
            record.index,
            record.components,
            record.mean_n,
            record.phase_noise,
            record.classical_bound,
            record.margin,
            record.chain_minimum,
        ]
        for record in summary.records
    ]


def extremal_document(result, include_state=True):
    document = extremal_to_document(result)

    if include_state:
        document["state"] = state_to_document(result.state)

    return document


def extremal_sweep_document(dim, results):
    return {
        "dim": dim,
        "results": [
            extremal_document(result, include_state=False) for result in results
        ],
    }


def extremal_rows(results):
    return [
        [
            result.target_n,
            finite_or_none(result.mu),
            result.phase_noise,
            result.scaled_noise,
            result.eigen_residual,
            result.constraint_residual,
            result.iterations,
        ]
        for result in results
    ]


def identity_document(report):
    return {
        "seed": report.seed,
        "trials": report.trials,
        "ensemble_trials": report.ensemble_trials,
        "passed": report.passed,
        "checks": [
            {
                "name": check.name,
                "description": check.description,
                "tolerance": check.tolerance,
                "trials": check.trials,
                "max_violation": check.max_violation,
                "worst_index": check.worst_index,
                "passed": check.passed,
            }
            for check in report.checks
        ],
    }


def to_json(document, precision):
    return dumps(document, precision=precision) + "\n"


def _cell(value, precision):
    if value is None:
        return ""

    if isinstance(value, bool):
        return "true" if value else "false"

    if isinstance(value, (int, np.integer)):
        return str(int(value))

    if isinstance(value, (float, np.floating)):
        return format_float(value, precision)

    return str(value)


def to_csv(columns, rows, precision):
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(columns)

    for row in rows:
        writer.writerow([_cell(value, precision) for value in row])

    return output.getvalue()
