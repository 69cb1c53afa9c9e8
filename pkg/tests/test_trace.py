import mixnewpy as mp
import numpy as np
import pytest


def record(k, f=1.0):
    return mp.IterationRecord(k, np.array([k + 0j]), f, 0.0, 0.0)


class TestTrace:
    def test_new_trace_is_running(self):
        trace = mp.Trace("mnm")
        assert trace.status == "running"
        assert trace.iterations() == 0
        assert len(trace) == 0

    def test_records_in_order(self):
        trace = mp.Trace("mnm")
        for k in range(3):
            trace.append(record(k, 3.0 - k))
        assert trace.iterations() == 2
        assert trace.objective_values() == [3.0, 2.0, 1.0]
        assert trace.final_objective() == 1.0
        assert trace.final_point()[0] == 2

    def test_out_of_order_record_raises_ValueError(self):
        trace = mp.Trace("mnm")
        trace.append(record(1))
        with pytest.raises(ValueError):
            trace.append(record(1))

    def test_nonfinite_objective_raises_ValueError(self):
        trace = mp.Trace("mnm")
        with pytest.raises(ValueError):
            trace.append(record(0, np.nan))

    def test_without_history_first_and_last_records_are_kept(self):
        trace = mp.Trace("mnm", keep_history=False)
        for k in range(5):
            trace.append(record(k))
        assert [r.k for r in trace.records] == [0, 4]

    def test_finish(self):
        trace = mp.Trace("mnm")
        trace.append(record(0))
        trace.finish("converged", "done")
        assert trace.is_converged() == True
        assert trace.message == "done"

    def test_unknown_status_raises_ValueError(self):
        with pytest.raises(ValueError):
            mp.Trace("mnm").finish("running")

    def test_seconds_per_iteration(self):
        trace = mp.Trace("mnm")
        trace.append(record(0))
        assert trace.seconds_per_iteration() == 0.0
        trace.append(record(4))
        trace.elapsed = 2.0
        assert trace.seconds_per_iteration() == 0.5
