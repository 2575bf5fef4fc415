from setuptools import setup, find_packages

setup(
    name="oeturbo",
    version="0.1.0",
    description="码率1/2 Turbo码与奇偶交织器实验工具",
    packages=find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    install_requires=[
        'click>=8.0.0',
        'rich>=10.0.0',
        'pyyaml>=6.0.0',
        'numpy>=1.22',
        'scipy>=1.8',
        'numba>=0.56',
        'matplotlib>=3.5',
    ],
    entry_points={
        'console_scripts': [
            'oeturbo=oeturbo.cli.main:cli',
        ],
    },
    python_requires='>=3.9',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Information Analysis',
        'Programming Language :: Python :: 3.9',
    ],
)
