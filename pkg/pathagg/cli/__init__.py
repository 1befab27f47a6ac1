"""
Interface de linha de comando do pathagg
"""
