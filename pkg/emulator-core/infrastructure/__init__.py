"""基础设施层：提供底层抽象和实现"""

