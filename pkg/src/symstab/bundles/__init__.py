"""Bundle descriptors, symmetric powers and the stability classifier."""
