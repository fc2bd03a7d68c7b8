"""
polymix: construct and classify self-dual chiral polytopes from finitely presented rotation groups.
"""
