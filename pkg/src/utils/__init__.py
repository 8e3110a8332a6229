"""
Общие утилиты: умолчания, исключения, ввод/вывод артефактов.
"""
