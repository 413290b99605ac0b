"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module provides custom exception classes for more convenient
exception handling. The following classes are included:
    DarbouxsysError
    UsageError
    ParseError
    NotFirstIntegral
    ResourceCapError
    CertificateError
    NegativeResult
    NotDivisible
    Inconsistent
    NotDarboux
    NoSolution
    DegenerateInput

Subclasses of NegativeResult are mathematical answers ("no such
object exists"), not misuse. The command line front end keeps the two
apart through its exit codes.
"""


class DarbouxsysError(Exception):
    pass


class UsageError(DarbouxsysError):
    pass


class ParseError(UsageError):

    def __init__(self, message, line, column):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        return 'line {}, column {}: {}'.format(self.line, self.column,
                                               self.message)


class NotFirstIntegral(UsageError):

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class ResourceCapError(DarbouxsysError):

    def __init__(self, message, cap, requested):
        super().__init__(message)
        self.cap = cap
        self.requested = requested


class CertificateError(DarbouxsysError):
    pass


class NegativeResult(DarbouxsysError):
    pass


class NotDivisible(NegativeResult):
    pass


class Inconsistent(NegativeResult):

    def __init__(self, message, residual_row):
        super().__init__(message)
        self.residual_row = residual_row


class NotDarboux(NegativeResult):

    def __init__(self, message, lie_derivative=None):
        super().__init__(message)
        self.lie_derivative = lie_derivative


class NoSolution(NegativeResult):

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateInput(NegativeResult):
    pass
