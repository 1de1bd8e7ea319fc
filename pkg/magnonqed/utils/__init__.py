"""Some useful functions used in ``magnonqed-py``"""
