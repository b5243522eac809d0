"""Periodic plus smooth image decomposition with radix-2 FFTs."""

from ._core import (
    CapacityError,
    Error,
    FormatError,
    NumericalError,
    ParameterError,
    SizeError,
    apodize,
    border_image,
    boundary_data,
    cost_table,
    decompose,
    fft2,
    ifft2,
    mirror_image,
    naive_dft2,
    nu_vector,
    opsd_boundary_spectrum,
    pack_frame,
    read_pgm,
    run_pipeline,
    write_pgm,
)

__all__ = [
    "CapacityError",
    "Error",
    "FormatError",
    "NumericalError",
    "ParameterError",
    "SizeError",
    "apodize",
    "border_image",
    "boundary_data",
    "cost_table",
    "decompose",
    "fft2",
    "ifft2",
    "mirror_image",
    "naive_dft2",
    "nu_vector",
    "opsd_boundary_spectrum",
    "pack_frame",
    "read_pgm",
    "run_pipeline",
    "write_pgm",
]
