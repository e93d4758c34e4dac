"""
milnordeg.suites
~~~~~~~~~~~~~~~~

Built-in corpora, one module per corpus, each exposing a `suite` list
"""
