from setuptools import setup, find_packages


setup(
    name="darbouxsys",
    packages=find_packages(exclude=["tests"]),
    install_requires=['numpy>=1.17', 'scipy>=1.0'],
    python_requires='>=3.9',
    entry_points={
        "console_scripts": ["darbouxsys=darbouxsys.cli:main"],
    },
)
