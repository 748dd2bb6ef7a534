"""
Сквозные сценарии
"""
