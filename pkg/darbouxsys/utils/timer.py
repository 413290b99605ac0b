"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


Stage timer. Reports go to the logging system, never to stdout, so
machine-readable output stays clean.

10-17-2026
"""

import datetime
import logging
import time

logger = logging.getLogger(__name__)


class EstimateTime():

    def __init__(self, njobs, mode='moving_average'):
        self.njobs = njobs
        self.mode = mode
        self.last_timestamp = time.perf_counter()
        self.dtime_log = []
        # Number of time points the moving average looks at
        self.__keep_pts = max(int(0.2 * njobs), 10)
        self.__iteration = 0
        self.__alg = {
            'moving_average': self.__moving_average,
            'average': self.__average
        }

    def __average(self):
        return sum(self.dtime_log) / len(self.dtime_log)

    def __moving_average(self):
        if len(self.dtime_log) > self.__keep_pts:
            self.dtime_log.pop(0)
        return sum(self.dtime_log) / len(self.dtime_log)

    def est(self):
        """Estimated seconds left"""
        try:
            per_job = self.__alg[self.mode]()
        except ZeroDivisionError:
            return 0
        return max(self.njobs - self.__iteration, 0) * per_job

    def stop_watch(self):
        """Marks the end of one job"""
        self.__iteration += 1
        now = time.perf_counter()
        self.dtime_log.append(now - self.last_timestamp)
        self.last_timestamp = now


class Timer():
    """
    Times one named stage of a computation.

    Usage: with Timer('constant cofactor search', total=len(candidates)) as t:
               for c in candidates:
                   ...
                   t.progress()

           Each progress() call logs the job count and the estimated time
           left at DEBUG level; leaving the block logs the elapsed time at
           INFO level. "total" may be omitted for stages without jobs.
    """

    def __init__(self, stage, total=None, mode='moving_average', log=None):
        self.stage = stage
        self.total = total
        self.iteration = 0
        self.log = log or logger
        self.__start_time = time.perf_counter()
        self.__stop_time = None
        self.estimatetime = EstimateTime(total or 0, mode)

    def __enter__(self):
        self.__start_time = time.perf_counter()
        self.__stop_time = None
        return self

    def __exit__(self, exc_type, exc, tb):
        self.stop()
        return False

    def elapsed(self):
        """Elapsed seconds as a float"""
        end = self.__stop_time if self.__stop_time is not None \
            else time.perf_counter()
        return end - self.__start_time

    def elapsed_time(self):
        """Elapsed time as h:mm:ss.ffffff"""
        return str(datetime.timedelta(seconds=self.elapsed()))

    def progress(self):
        self.iteration += 1
        self.estimatetime.stop_watch()
        if self.total:
            est = datetime.timedelta(seconds=round(self.estimatetime.est()))
            self.log.debug("%s: %d/%d done, est. time left %s", self.stage,
                           self.iteration, self.total, est)

    def stop(self):
        if self.__stop_time is None:
            self.__stop_time = time.perf_counter()
            self.log.info("%s finished in %s", self.stage, self.elapsed_time())
        return self.elapsed()
